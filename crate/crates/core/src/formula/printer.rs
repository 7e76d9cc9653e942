use super::Formula;

const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

pub(super) fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, &mut out);
    out
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) if f.as_only_knowing().is_some() => UNARY,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write(f: &Formula, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write(f, 0, out);
        out.push(')');
        return;
    }
    if let Some((agent, body)) = f.as_only_knowing() {
        out.push_str(&format!("O{agent} "));
        write(body, UNARY, out);
        return;
    }
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Not(inner) => {
            if let Formula::Val(v) = inner.as_ref() {
                if let Formula::Not(body) = v.as_ref() {
                    out.push_str("C ");
                    write(body, UNARY, out);
                    return;
                }
            }
            out.push('~');
            write(inner, UNARY, out);
        }
        Formula::And(a, b) => binary(a, " & ", b, AND, UNARY, out),
        Formula::Or(a, b) => binary(a, " | ", b, OR, AND, out),
        Formula::Implies(a, b) => binary(a, " -> ", b, OR, IMP, out),
        Formula::Iff(a, b) => binary(a, " <-> ", b, IFF, IMP, out),
        Formula::L(agent, body) => {
            out.push_str(&format!("L{agent} "));
            write(body, UNARY, out);
        }
        Formula::N(agent, body) => {
            out.push_str(&format!("N{agent} "));
            write(body, UNARY, out);
        }
        Formula::Val(body) => {
            out.push_str("V ");
            write(body, UNARY, out);
        }
    }
}

fn binary(a: &Formula, op: &str, b: &Formula, left_min: u8, right_min: u8, out: &mut String) {
    write(a, left_min, out);
    out.push_str(op);
    write(b, right_min, out);
}
