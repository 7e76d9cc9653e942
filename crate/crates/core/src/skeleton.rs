//! Boolean skeleton of a flattened formula: atoms and modal atoms become
//! variables, evaluated three-valued under partial assignments.

use std::collections::HashMap;

use crate::formula::{AgentId, Formula};
use crate::normal_form::{Literal, Modality};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Var {
    Prop(String),
    Modal(Modality, AgentId, Formula),
}

#[derive(Debug)]
enum Node {
    Const(bool),
    Var(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
}

/// The root is kept as a list of conjuncts (negations pushed through the
/// top-level Boolean structure) so that branching can start with the most
/// constrained one.
#[derive(Debug)]
pub(crate) struct Skeleton {
    vars: Vec<Var>,
    conjuncts: Vec<Node>,
    /// Variables of each conjunct, ascending.
    occurs: Vec<Vec<usize>>,
}

pub(crate) type Assignment = Vec<Option<bool>>;

impl Skeleton {
    /// Modal variables are numbered before propositional ones, each group in
    /// order of first occurrence, so branching settles modal atoms first.
    pub(crate) fn new(flat: &Formula) -> Self {
        let mut modal = Vec::new();
        let mut props = Vec::new();
        collect(flat, &mut modal, &mut props);
        let vars: Vec<Var> = modal.into_iter().chain(props).collect();
        let index: HashMap<&Var, usize> = vars.iter().enumerate().map(|(k, v)| (v, k)).collect();
        let mut conjuncts = Vec::new();
        split_conjuncts(build(flat, &index), &mut conjuncts);
        let occurs = conjuncts
            .iter()
            .map(|c| {
                let mut vs = Vec::new();
                node_vars(c, &mut vs);
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();
        Skeleton { vars, conjuncts, occurs }
    }

    pub(crate) fn len(&self) -> usize {
        self.vars.len()
    }

    pub(crate) fn agent_of(&self, var: usize) -> Option<AgentId> {
        match &self.vars[var] {
            Var::Modal(_, agent, _) => Some(*agent),
            Var::Prop(_) => None,
        }
    }

    /// Truth value under `assign` (if already determined) and otherwise a
    /// variable to branch on: the least unassigned variable in an
    /// undetermined position of the undetermined conjunct with the fewest
    /// unassigned variables.
    pub(crate) fn status(&self, assign: &Assignment) -> (Option<bool>, Option<usize>) {
        let mut best: Option<(usize, usize)> = None;
        for (c, vars) in self.conjuncts.iter().zip(&self.occurs) {
            match status(c, assign) {
                (Some(false), _) => return (Some(false), None),
                (Some(true), _) => {}
                (None, next) => {
                    let open = vars.iter().filter(|&&v| assign[v].is_none()).count();
                    let next = next.expect("undetermined node has an unassigned variable");
                    if best.is_none_or(|(o, _)| open < o) {
                        best = Some((open, next));
                    }
                }
            }
        }
        match best {
            Some((_, next)) => (None, Some(next)),
            None => (Some(true), None),
        }
    }

    /// The literals fixed by `assign`, in variable order.
    pub(crate) fn literals<'a>(&'a self, assign: &'a Assignment) -> impl Iterator<Item = Literal> + 'a {
        self.vars.iter().zip(assign).filter_map(|(var, value)| {
            let positive = (*value)?;
            Some(match var {
                Var::Prop(atom) => Literal::Prop { atom: atom.clone(), positive },
                Var::Modal(kind, agent, body) => {
                    Literal::Modal { kind: *kind, agent: *agent, body: body.clone(), positive }
                }
            })
        })
    }
}

fn collect(f: &Formula, modal: &mut Vec<Var>, props: &mut Vec<Var>) {
    let push = |list: &mut Vec<Var>, v: Var| {
        if !list.contains(&v) {
            list.push(v);
        }
    };
    match f {
        Formula::Atom(a) => push(props, Var::Prop(a.clone())),
        Formula::True | Formula::False => {}
        Formula::Not(a) => collect(a, modal, props),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect(a, modal, props);
            collect(b, modal, props);
        }
        Formula::L(i, body) => push(modal, Var::Modal(Modality::L, *i, (**body).clone())),
        Formula::N(i, body) => push(modal, Var::Modal(Modality::N, *i, (**body).clone())),
        Formula::Val(_) => unreachable!("skeletons are built from Val-free formulas"),
    }
}

fn build(f: &Formula, index: &HashMap<&Var, usize>) -> Node {
    let b = |g: &Formula| Box::new(build(g, index));
    match f {
        Formula::Atom(a) => Node::Var(index[&Var::Prop(a.clone())]),
        Formula::True => Node::Const(true),
        Formula::False => Node::Const(false),
        Formula::Not(a) => Node::Not(b(a)),
        Formula::And(x, y) => Node::And(b(x), b(y)),
        Formula::Or(x, y) => Node::Or(b(x), b(y)),
        Formula::Implies(x, y) => Node::Or(Box::new(Node::Not(b(x))), b(y)),
        Formula::Iff(x, y) => Node::Iff(b(x), b(y)),
        Formula::L(i, body) => Node::Var(index[&Var::Modal(Modality::L, *i, (**body).clone())]),
        Formula::N(i, body) => Node::Var(index[&Var::Modal(Modality::N, *i, (**body).clone())]),
        Formula::Val(_) => unreachable!("skeletons are built from Val-free formulas"),
    }
}

fn split_conjuncts(node: Node, out: &mut Vec<Node>) {
    match node {
        Node::And(a, b) => {
            split_conjuncts(*a, out);
            split_conjuncts(*b, out);
        }
        Node::Not(inner) => match *inner {
            Node::Or(a, b) => {
                split_conjuncts(Node::Not(a), out);
                split_conjuncts(Node::Not(b), out);
            }
            Node::Not(a) => split_conjuncts(*a, out),
            other => out.push(Node::Not(Box::new(other))),
        },
        Node::Const(true) => {}
        other => out.push(other),
    }
}

fn node_vars(node: &Node, out: &mut Vec<usize>) {
    match node {
        Node::Const(_) => {}
        Node::Var(k) => out.push(*k),
        Node::Not(a) => node_vars(a, out),
        Node::And(a, b) | Node::Or(a, b) | Node::Iff(a, b) => {
            node_vars(a, out);
            node_vars(b, out);
        }
    }
}

fn least(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn status(node: &Node, assign: &Assignment) -> (Option<bool>, Option<usize>) {
    match node {
        Node::Const(v) => (Some(*v), None),
        Node::Var(k) => match assign[*k] {
            Some(v) => (Some(v), None),
            None => (None, Some(*k)),
        },
        Node::Not(a) => {
            let (v, next) = status(a, assign);
            (v.map(|x| !x), next)
        }
        Node::And(a, b) | Node::Or(a, b) => {
            let dominant = matches!(node, Node::Or(..));
            let (va, na) = status(a, assign);
            if va == Some(dominant) {
                return (va, None);
            }
            let (vb, nb) = status(b, assign);
            match (va, vb) {
                (_, Some(v)) if v == dominant => (Some(v), None),
                (Some(_), Some(_)) => (Some(!dominant), None),
                _ => (None, least(na, nb)),
            }
        }
        Node::Iff(a, b) => {
            let (va, na) = status(a, assign);
            let (vb, nb) = status(b, assign);
            match (va, vb) {
                (Some(x), Some(y)) => (Some(x == y), None),
                _ => (None, least(na, nb)),
            }
        }
    }
}
