//! Constant-folding constructors used by the rewriting passes.

use crate::formula::Formula;

pub fn not(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(inner) => *inner,
        other => Formula::not(other),
    }
}

pub fn and(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::False, _) | (_, Formula::False) => Formula::False,
        (Formula::True, x) | (x, Formula::True) => x,
        (a, b) if a == b => a,
        (a, b) if is_complement(&a, &b) => Formula::False,
        (a, b) => Formula::and(a, b),
    }
}

pub fn or(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, _) | (_, Formula::True) => Formula::True,
        (Formula::False, x) | (x, Formula::False) => x,
        (a, b) if a == b => a,
        (a, b) if is_complement(&a, &b) => Formula::True,
        (a, b) => Formula::or(a, b),
    }
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    or(not(a), b)
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, x) | (x, Formula::True) => x,
        (Formula::False, x) | (x, Formula::False) => not(x),
        (a, b) if a == b => Formula::True,
        (a, b) => Formula::iff(a, b),
    }
}

fn is_complement(a: &Formula, b: &Formula) -> bool {
    matches!(a, Formula::Not(x) if x.as_ref() == b) || matches!(b, Formula::Not(x) if x.as_ref() == a)
}

/// Bottom-up constant folding over the Boolean structure and inside
/// modal arguments.
pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Not(a) => not(simplify(a)),
        Formula::And(a, b) => and(simplify(a), simplify(b)),
        Formula::Or(a, b) => or(simplify(a), simplify(b)),
        Formula::Implies(a, b) => implies(simplify(a), simplify(b)),
        Formula::Iff(a, b) => iff(simplify(a), simplify(b)),
        Formula::L(i, a) => Formula::l(*i, simplify(a)),
        Formula::N(i, a) => Formula::n(*i, simplify(a)),
        Formula::Val(a) => Formula::val(simplify(a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn folds_constants() {
        let f = parse("(p & true) | false", 1).unwrap();
        assert_eq!(simplify(&f), Formula::atom("p"));
        let g = parse("~~(p & p) -> false", 1).unwrap();
        assert_eq!(simplify(&g), Formula::not(Formula::atom("p")));
        assert_eq!(simplify(&parse("p & ~p", 1).unwrap()), Formula::False);
        assert_eq!(simplify(&parse("L1 (q | true)", 1).unwrap()), parse("L1 true", 1).unwrap());
    }
}
