use serde::Serialize;

use super::{AgentId, Formula};
use crate::error::Error;

/// Syntactic classification of a formula relative to one agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaClass {
    pub agent: u32,
    pub propositional: bool,
    /// No `N` and no `Val`.
    pub basic: bool,
    pub i_objective: bool,
    pub i_subjective: bool,
    pub in_onl_minus: bool,
    pub in_onl_plus: bool,
    /// `None` when the formula mentions `Val`.
    pub modal_depth: Option<usize>,
}

pub fn classify(f: &Formula, agent: AgentId) -> FormulaClass {
    FormulaClass {
        agent: agent.index(),
        propositional: is_propositional(f),
        basic: is_basic(f),
        i_objective: is_i_objective(f, agent),
        i_subjective: is_i_subjective(f, agent),
        in_onl_minus: in_onl_minus(f),
        in_onl_plus: true,
        modal_depth: depth(f).ok(),
    }
}

pub fn is_propositional(f: &Formula) -> bool {
    !f.any(&|g| matches!(g, Formula::L(..) | Formula::N(..) | Formula::Val(_)))
}

pub fn is_basic(f: &Formula) -> bool {
    !f.any(&|g| matches!(g, Formula::N(..) | Formula::Val(_)))
}

/// Walks the Boolean skeleton of `f`, handing each maximal non-Boolean
/// subformula (atom, modality, `Val`) to `leaf`.
fn boolean_leaves(f: &Formula, leaf: &dyn Fn(&Formula) -> bool) -> bool {
    match f {
        Formula::True | Formula::False => true,
        Formula::Not(a) => boolean_leaves(a, leaf),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            boolean_leaves(a, leaf) && boolean_leaves(b, leaf)
        }
        _ => leaf(f),
    }
}

/// Boolean combination of atoms and `L_j φ` / `N_j φ` with `j ≠ agent`.
pub fn is_i_objective(f: &Formula, agent: AgentId) -> bool {
    boolean_leaves(f, &|g| match g {
        Formula::Atom(_) => true,
        Formula::L(j, _) | Formula::N(j, _) => *j != agent,
        _ => false,
    })
}

/// Boolean combination of `L_i φ` / `N_i φ`.
pub fn is_i_subjective(f: &Formula, agent: AgentId) -> bool {
    boolean_leaves(f, &|g| match g {
        Formula::L(j, _) | Formula::N(j, _) => *j == agent,
        _ => false,
    })
}

fn in_onl_minus(f: &Formula) -> bool {
    fn walk(f: &Formula, enclosing: &mut Vec<AgentId>) -> bool {
        match f {
            Formula::Atom(_) | Formula::True | Formula::False => true,
            Formula::Val(_) => false,
            Formula::Not(a) => walk(a, enclosing),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                walk(a, enclosing) && walk(b, enclosing)
            }
            Formula::L(i, a) | Formula::N(i, a) => {
                if matches!(f, Formula::N(..)) && enclosing.iter().any(|k| k != i) {
                    return false;
                }
                enclosing.push(*i);
                let ok = walk(a, enclosing);
                enclosing.pop();
                ok
            }
        }
    }
    walk(f, &mut Vec::new())
}

/// Modal depth, with `N_i` counted like `L_i`. Fails on `Val`.
pub fn depth(f: &Formula) -> Result<usize, Error> {
    Ok(match f {
        Formula::Atom(_) | Formula::True | Formula::False => 0,
        Formula::Val(_) => return Err(Error::ValNotAllowed("depth")),
        Formula::Not(a) => depth(a)?,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            depth(a)?.max(depth(b)?)
        }
        Formula::L(_, a) | Formula::N(_, a) => 1 + depth(a)?,
    })
}

/// Like [`depth`] but counting `Val` as one more level; total on all formulas.
pub(crate) fn rank(f: &Formula) -> usize {
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => 0,
        Formula::Not(a) => rank(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => rank(a).max(rank(b)),
        Formula::L(_, a) | Formula::N(_, a) | Formula::Val(a) => 1 + rank(a),
    }
}
