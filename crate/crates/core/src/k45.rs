//! K45ₙ satisfiability for basic formulas.
//!
//! In a transitive Euclidean frame every `i`-successor of `w` has exactly
//! `K_i(w)` as its own `i`-successors, so the successors form a cluster that
//! agrees with `w` on every `L_i` formula. The tableau exploits this: after
//! Boolean saturation of a world, each agent gets one cluster. The truth
//! values of all `L_i` subformulas reachable through Booleans and `L_i` are
//! guessed up front (an analytic cut), then one witness world is created per
//! negated `L_i` literal. Witnesses carry the guessed literals and never open
//! a second `i`-cluster, which keeps the construction finite.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::{is_basic, AgentId, Formula};
use crate::kripke::KripkeStructure;

type Signed = (Formula, bool);
type Key = (BTreeSet<Signed>, Option<AgentId>);

/// A world of the witness tree together with one successor cluster per agent.
#[derive(Clone, Debug, Default)]
pub struct TableauNode {
    pub true_atoms: BTreeSet<String>,
    pub successors: Vec<(AgentId, Vec<TableauNode>)>,
}

impl TableauNode {
    /// Flattens the tree into a Kripke structure. The root is world `w0`.
    pub fn to_kripke(&self) -> KripkeStructure {
        let mut m = KripkeStructure::new();
        add_node(&mut m, self);
        m
    }
}

fn add_node(m: &mut KripkeStructure, node: &TableauNode) -> usize {
    let id = m.add_world(format!("w{}", m.world_count()), node.true_atoms.iter().cloned());
    for (agent, cluster) in &node.successors {
        let ids: Vec<usize> = cluster.iter().map(|c| add_node(m, c)).collect();
        for &c in &ids {
            m.add_edge(*agent, id, c);
            for &d in &ids {
                m.add_edge(*agent, c, d);
            }
        }
    }
    id
}

#[derive(Clone, Default)]
struct Literals {
    atoms: BTreeMap<String, bool>,
    modal: BTreeMap<(AgentId, Formula), bool>,
}

impl Literals {
    fn assign<K: Ord>(map: &mut BTreeMap<K, bool>, key: K, value: bool) -> bool {
        *map.entry(key).or_insert(value) == value
    }
}

/// Saturates the Boolean structure of `todo`, calling `k` on each open branch
/// until one succeeds.
fn saturate<T>(mut todo: Vec<Signed>, mut lits: Literals, k: &mut dyn FnMut(&Literals) -> Option<T>) -> Option<T> {
    while let Some((f, sign)) = todo.pop() {
        let alternatives: [Vec<Signed>; 2] = match (f, sign) {
            (Formula::True, true) | (Formula::False, false) => continue,
            (Formula::True, false) | (Formula::False, true) => return None,
            (Formula::Atom(a), s) => {
                if !Literals::assign(&mut lits.atoms, a, s) {
                    return None;
                }
                continue;
            }
            (Formula::L(i, body), s) => {
                if !Literals::assign(&mut lits.modal, (i, *body), s) {
                    return None;
                }
                continue;
            }
            (Formula::Not(a), s) => {
                todo.push((*a, !s));
                continue;
            }
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                todo.push((*a, sign));
                todo.push((*b, sign));
                continue;
            }
            (Formula::Implies(a, b), false) => {
                todo.push((*a, true));
                todo.push((*b, false));
                continue;
            }
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
                [vec![(*a, sign)], vec![(*b, sign)]]
            }
            (Formula::Implies(a, b), true) => [vec![(*a, false)], vec![(*b, true)]],
            (Formula::Iff(a, b), s) => [
                vec![((*a).clone(), true), ((*b).clone(), s)],
                vec![(*a, false), (*b, !s)],
            ],
            (Formula::N(..) | Formula::Val(_), _) => unreachable!("input checked to be basic"),
        };
        for alt in alternatives {
            let mut branch = todo.clone();
            branch.extend(alt);
            if let Some(found) = saturate(branch, lits.clone(), k) {
                return Some(found);
            }
        }
        return None;
    }
    k(&lits)
}

/// Bodies `χ` of every `L_i χ` reachable from `roots` through Boolean
/// connectives and `L_i` only.
fn closure(agent: AgentId, roots: impl IntoIterator<Item = Formula>) -> BTreeSet<Formula> {
    fn walk(agent: AgentId, f: &Formula, out: &mut BTreeSet<Formula>) {
        match f {
            Formula::Not(a) => walk(agent, a, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                walk(agent, a, out);
                walk(agent, b, out);
            }
            Formula::L(i, body) if *i == agent => {
                if out.insert((**body).clone()) {
                    walk(agent, body, out);
                }
            }
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    for root in roots {
        if out.insert(root.clone()) {
            walk(agent, &root, &mut out);
        }
    }
    out
}

/// Reusable tableau; branch results are memoized across calls.
pub struct Tableau {
    agents: u32,
    memo: HashMap<Key, Option<TableauNode>>,
}

impl Tableau {
    pub fn new(agents: u32) -> Self {
        Tableau { agents, memo: HashMap::new() }
    }

    fn check_input(&self, f: &Formula) -> Result<()> {
        if !is_basic(f) {
            return Err(Error::NotBasic(f.to_string()));
        }
        let max = f.max_agent();
        if max > self.agents {
            return Err(Error::AgentOutOfRange { agent: max, agents: self.agents });
        }
        Ok(())
    }

    pub fn sat(&mut self, f: &Formula) -> Result<bool> {
        Ok(self.model(f)?.is_some())
    }

    /// A witness tree whose root satisfies `f`, if one exists.
    pub fn model(&mut self, f: &Formula) -> Result<Option<TableauNode>> {
        self.check_input(f)?;
        Ok(self.world(vec![(f.clone(), true)], None))
    }

    fn world(&mut self, label: Vec<Signed>, member_of: Option<AgentId>) -> Option<TableauNode> {
        let key: Key = (label.iter().cloned().collect(), member_of);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let result = saturate(label, Literals::default(), &mut |lits| self.open_clusters(lits, member_of));
        self.memo.insert(key, result.clone());
        result
    }

    fn open_clusters(&mut self, lits: &Literals, member_of: Option<AgentId>) -> Option<TableauNode> {
        let agents: BTreeSet<AgentId> =
            lits.modal.keys().map(|(i, _)| *i).filter(|i| Some(*i) != member_of).collect();
        let mut successors = Vec::new();
        for agent in agents {
            successors.push((agent, self.cluster(agent, lits)?));
        }
        let true_atoms = lits.atoms.iter().filter(|(_, v)| **v).map(|(a, _)| a.clone()).collect();
        Some(TableauNode { true_atoms, successors })
    }

    fn cluster(&mut self, agent: AgentId, lits: &Literals) -> Option<Vec<TableauNode>> {
        let fixed: BTreeMap<Formula, bool> = lits
            .modal
            .iter()
            .filter(|((i, _), _)| *i == agent)
            .map(|((_, body), v)| (body.clone(), *v))
            .collect();
        let reach = closure(agent, fixed.keys().cloned());
        let free: Vec<&Formula> = reach.iter().filter(|b| !fixed.contains_key(*b)).collect();
        assert!(free.len() < 64, "cut over {} formulas is out of reach", free.len());

        'guess: for mask in 0..(1u64 << free.len()) {
            let mut guess = fixed.clone();
            for (bit, body) in free.iter().enumerate() {
                guess.insert((*body).clone(), mask & (1 << bit) == 0);
            }
            let negated: Vec<&Formula> = guess.iter().filter(|(_, v)| !**v).map(|(b, _)| b).collect();
            if negated.is_empty() {
                return Some(Vec::new());
            }
            let mut base: Vec<Signed> = guess.iter().filter(|(_, v)| **v).map(|(b, _)| (b.clone(), true)).collect();
            base.extend(guess.iter().map(|(b, v)| (Formula::l(agent, b.clone()), *v)));

            let mut members = Vec::with_capacity(negated.len());
            for nu in negated {
                let mut label = base.clone();
                label.push((nu.clone(), false));
                match self.world(label, Some(agent)) {
                    Some(node) => members.push(node),
                    None => continue 'guess,
                }
            }
            return Some(members);
        }
        None
    }
}

/// Is `f` satisfiable in some K45ₙ structure with `agents` agents?
pub fn sat(f: &Formula, agents: u32) -> Result<bool> {
    Tableau::new(agents).sat(f)
}

/// A finite K45ₙ witness for `f`, rooted at world `w0`.
pub fn sat_with_witness(f: &Formula, agents: u32) -> Result<Option<KripkeStructure>> {
    Ok(Tableau::new(agents).model(f)?.map(|t| t.to_kripke()))
}

/// `g` is independent of `f` when both `f ∧ g` and `f ∧ ¬g` are satisfiable.
pub fn independent(f: &Formula, g: &Formula) -> Result<bool> {
    let agents = f.max_agent().max(g.max_agent()).max(1);
    let mut t = Tableau::new(agents);
    Ok(t.sat(&Formula::and(f.clone(), g.clone()))? && t.sat(&Formula::and(f.clone(), Formula::not(g.clone())))?)
}
