//! Formulas of the only-knowing language: atoms, Boolean connectives, the
//! per-agent modalities `L_i` / `N_i` and the validity operator `Val`.
//!
//! `O_i φ` is not a constructor. The parser expands it to
//! `L_i φ ∧ N_i ¬φ` and the printer folds that exact pattern back.

pub(crate) mod classify;
mod parser;
mod printer;

pub use classify::{classify, depth, is_basic, is_i_objective, is_i_subjective, is_propositional, FormulaClass};
pub use parser::{parse, parse_unbounded, ParseError};

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;

/// A 1-based agent index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(u32);

impl AgentId {
    pub fn new(index: u32) -> Result<Self, Error> {
        if index == 0 {
            return Err(Error::AgentOutOfRange { agent: 0, agents: 0 });
        }
        Ok(AgentId(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    L(AgentId, Box<Formula>),
    N(AgentId, Box<Formula>),
    Val(Box<Formula>),
}

/// Shorthand constructors. None of them simplify; see [`crate::simplify`]
/// for the constant-folding variants.
impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn l(agent: AgentId, f: Formula) -> Self {
        Formula::L(agent, Box::new(f))
    }

    pub fn n(agent: AgentId, f: Formula) -> Self {
        Formula::N(agent, Box::new(f))
    }

    /// `O_i φ`, i.e. `L_i φ ∧ N_i ¬φ`.
    pub fn o(agent: AgentId, f: Formula) -> Self {
        Formula::and(Formula::l(agent, f.clone()), Formula::n(agent, Formula::not(f)))
    }

    pub fn val(f: Formula) -> Self {
        Formula::Val(Box::new(f))
    }

    /// `Con φ`, i.e. `¬Val ¬φ`.
    pub fn con(f: Formula) -> Self {
        Formula::not(Formula::val(Formula::not(f)))
    }

    /// Left-nested conjunction; `True` for an empty iterator.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Formula::True,
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    /// Left-nested disjunction; `False` for an empty iterator.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Formula::False,
            Some(first) => iter.fold(first, Formula::or),
        }
    }

    /// If this is `O_i φ` in expanded form, returns `(i, φ)`.
    pub fn as_only_knowing(&self) -> Option<(AgentId, &Formula)> {
        if let Formula::And(a, b) = self {
            if let (Formula::L(i, phi), Formula::N(j, neg)) = (a.as_ref(), b.as_ref()) {
                if i == j {
                    if let Formula::Not(inner) = neg.as_ref() {
                        if inner.as_ref() == phi.as_ref() {
                            return Some((*i, phi));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::True | Formula::False => {}
            Formula::Not(a) | Formula::L(_, a) | Formula::N(_, a) | Formula::Val(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn agents(&self) -> BTreeSet<AgentId> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::L(i, _) | Formula::N(i, _) = f {
                out.insert(*i);
            }
        });
        out
    }

    pub fn max_agent(&self) -> u32 {
        self.agents().iter().map(|a| a.index()).max().unwrap_or(0)
    }

    pub fn mentions_val(&self) -> bool {
        self.any(&|f| matches!(f, Formula::Val(_)))
    }

    pub fn mentions_n(&self) -> bool {
        self.any(&|f| matches!(f, Formula::N(..)))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Pre-order traversal over every subformula, including `self`.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => {}
            Formula::Not(a) | Formula::L(_, a) | Formula::N(_, a) | Formula::Val(a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn any(&self, pred: &dyn Fn(&Formula) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => false,
            Formula::Not(a) | Formula::L(_, a) | Formula::N(_, a) | Formula::Val(a) => a.any(pred),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.any(pred) || b.any(pred)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&printer::print(self))
    }
}

/// Renders a formula in the concrete syntax accepted by [`parse`].
pub fn print(f: &Formula) -> String {
    printer::print(f)
}

/// Builds `(L_j L_i)^(bound+1) p` for the smallest agent `j ≠ i`.
///
/// The result is a basic `i`-objective formula of depth `2(bound+1)` that
/// no consistent basic `i`-objective formula of depth `≤ bound` decides.
pub fn build_independent(agent: AgentId, agents: u32, bound: usize, atom: &str) -> Result<Formula, Error> {
    if agents < 2 {
        return Err(Error::TooFewAgents { agents });
    }
    if agent.index() > agents {
        return Err(Error::AgentOutOfRange { agent: agent.index(), agents });
    }
    let other = AgentId((1..=agents).find(|&j| j != agent.index()).expect("n >= 2"));
    let mut f = Formula::atom(atom);
    for _ in 0..=bound {
        f = Formula::l(other, Formula::l(agent, f));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> AgentId {
        AgentId::new(i).unwrap()
    }

    #[test]
    fn independent_formula_shape() {
        let f = build_independent(a(1), 2, 1, "p").unwrap();
        assert_eq!(f, parse("L2 L1 L2 L1 p", 2).unwrap());
        assert_eq!(depth(&f).unwrap(), 4);
        assert!(is_i_objective(&f, a(1)));
        assert!(is_basic(&f));

        let g = build_independent(a(2), 2, 0, "p").unwrap();
        assert_eq!(g, parse("L1 L2 p", 2).unwrap());
    }

    #[test]
    fn independent_needs_two_agents() {
        assert!(matches!(
            build_independent(a(1), 1, 0, "p"),
            Err(Error::TooFewAgents { agents: 1 })
        ));
    }

    #[test]
    fn only_knowing_pattern() {
        let f = Formula::o(a(1), Formula::atom("p"));
        let (i, body) = f.as_only_knowing().unwrap();
        assert_eq!(i, a(1));
        assert_eq!(body, &Formula::atom("p"));
        assert!(Formula::and(Formula::l(a(1), Formula::atom("p")), Formula::n(a(2), Formula::not(Formula::atom("p"))))
            .as_only_knowing()
            .is_none());
    }

    #[test]
    fn zero_agent_rejected() {
        assert!(AgentId::new(0).is_err());
    }
}
