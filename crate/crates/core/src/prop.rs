//! Propositional satisfiability: Tseitin encoding plus a small DPLL search.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formula::Formula;

type Lit = i32;

struct Encoder<'a> {
    vars: HashMap<&'a str, Lit>,
    next: Lit,
    clauses: Vec<Vec<Lit>>,
}

impl<'a> Encoder<'a> {
    fn fresh(&mut self) -> Lit {
        self.next += 1;
        self.next
    }

    /// Returns a literal equivalent to `f` under the emitted clauses.
    fn encode(&mut self, f: &'a Formula) -> Result<Lit> {
        Ok(match f {
            Formula::Atom(name) => {
                if let Some(&v) = self.vars.get(name.as_str()) {
                    v
                } else {
                    let v = self.fresh();
                    self.vars.insert(name, v);
                    v
                }
            }
            Formula::True => {
                let v = self.fresh();
                self.clauses.push(vec![v]);
                v
            }
            Formula::False => {
                let v = self.fresh();
                self.clauses.push(vec![-v]);
                v
            }
            Formula::Not(a) => -self.encode(a)?,
            Formula::And(a, b) => {
                let (x, y) = (self.encode(a)?, self.encode(b)?);
                let v = self.fresh();
                self.clauses.extend([vec![-v, x], vec![-v, y], vec![v, -x, -y]]);
                v
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.encode(a)?, self.encode(b)?);
                let v = self.fresh();
                self.clauses.extend([vec![-v, x, y], vec![v, -x], vec![v, -y]]);
                v
            }
            Formula::Implies(a, b) => {
                let (x, y) = (self.encode(a)?, self.encode(b)?);
                let v = self.fresh();
                self.clauses.extend([vec![-v, -x, y], vec![v, x], vec![v, -y]]);
                v
            }
            Formula::Iff(a, b) => {
                let (x, y) = (self.encode(a)?, self.encode(b)?);
                let v = self.fresh();
                self.clauses.extend([
                    vec![-v, -x, y],
                    vec![-v, x, -y],
                    vec![v, x, y],
                    vec![v, -x, -y],
                ]);
                v
            }
            _ => return Err(Error::NotPropositional(f.to_string())),
        })
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Value {
    Unset,
    True,
    False,
}

fn lit_value(assign: &[Value], lit: Lit) -> Value {
    match (assign[lit.unsigned_abs() as usize], lit > 0) {
        (Value::Unset, _) => Value::Unset,
        (Value::True, true) | (Value::False, false) => Value::True,
        _ => Value::False,
    }
}

fn set(assign: &mut [Value], lit: Lit) {
    assign[lit.unsigned_abs() as usize] = if lit > 0 { Value::True } else { Value::False };
}

fn dpll(clauses: &[Vec<Lit>], assign: &mut Vec<Value>) -> bool {
    // Unit propagation to fixpoint.
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for &lit in clause {
                match lit_value(assign, lit) {
                    Value::True => {
                        satisfied = true;
                        break;
                    }
                    Value::Unset => {
                        open += 1;
                        unassigned = Some(lit);
                    }
                    Value::False => {}
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return false,
                1 => {
                    set(assign, unassigned.expect("one open literal"));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = clauses
        .iter()
        .filter(|c| !c.iter().any(|&l| lit_value(assign, l) == Value::True))
        .flat_map(|c| c.iter())
        .find(|&&l| lit_value(assign, l) == Value::Unset)
        .copied();
    let Some(lit) = branch else {
        return true;
    };
    for choice in [lit, -lit] {
        let mut trial = assign.clone();
        set(&mut trial, choice);
        if dpll(clauses, &mut trial) {
            *assign = trial;
            return true;
        }
    }
    false
}

/// Satisfiability of a propositional formula.
pub fn prop_sat(f: &Formula) -> Result<bool> {
    Ok(prop_model(f)?.is_some())
}

/// A satisfying assignment over the atoms of `f`, if one exists.
pub fn prop_model(f: &Formula) -> Result<Option<HashMap<String, bool>>> {
    let mut enc = Encoder { vars: HashMap::new(), next: 0, clauses: Vec::new() };
    let root = enc.encode(f)?;
    enc.clauses.push(vec![root]);
    let mut assign = vec![Value::Unset; enc.next as usize + 1];
    if !dpll(&enc.clauses, &mut assign) {
        return Ok(None);
    }
    Ok(Some(
        enc.vars
            .iter()
            .map(|(name, &v)| (name.to_string(), assign[v as usize] == Value::True))
            .collect(),
    ))
}

/// Truth of a propositional formula under an assignment; unlisted atoms are false.
pub fn eval_prop(f: &Formula, assignment: &dyn Fn(&str) -> bool) -> Result<bool> {
    Ok(match f {
        Formula::Atom(name) => assignment(name),
        Formula::True => true,
        Formula::False => false,
        Formula::Not(a) => !eval_prop(a, assignment)?,
        Formula::And(a, b) => eval_prop(a, assignment)? && eval_prop(b, assignment)?,
        Formula::Or(a, b) => eval_prop(a, assignment)? || eval_prop(b, assignment)?,
        Formula::Implies(a, b) => !eval_prop(a, assignment)? || eval_prop(b, assignment)?,
        Formula::Iff(a, b) => eval_prop(a, assignment)? == eval_prop(b, assignment)?,
        _ => return Err(Error::NotPropositional(f.to_string())),
    })
}
