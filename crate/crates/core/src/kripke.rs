//! Finite multi-agent Kripke structures.
//!
//! Besides standard evaluation of basic formulas, two finite-model readings
//! of `N_i` are provided:
//!
//! * naive: `N_i α` holds at `w` iff `α` holds at every `w' ∉ K_i(w)`;
//! * fixed: as naive, restricted to `w'` with `K_i(w') = K_i(w)`.
//!
//! Model files are JSON:
//!
//! ```json
//! { "worlds": { "w": ["p"], "v": [] }, "relations": { "1": [["w", "v"]] } }
//! ```
//!
//! Atoms not listed for a world are false there.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{AgentId, Formula};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub relations: BTreeMap<u32, Vec<(String, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeStructure {
    names: Vec<String>,
    valuation: Vec<BTreeSet<String>>,
    /// agent → successor sets indexed by world.
    relations: BTreeMap<AgentId, Vec<BTreeSet<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NSemantics {
    /// Reject `N` altogether.
    Basic,
    Naive,
    Fixed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `(agent, u, v, w)`: `(u,v), (v,w)` present but `(u,w)` missing.
    pub transitivity: Vec<(u32, String, String, String)>,
    /// `(agent, u, v, w)`: `(u,v), (u,w)` present but `(v,w)` missing.
    pub euclidean: Vec<(u32, String, String, String)>,
}

impl ValidationReport {
    pub fn is_k45(&self) -> bool {
        self.transitivity.is_empty() && self.euclidean.is_empty()
    }
}

impl KripkeStructure {
    pub fn new() -> Self {
        KripkeStructure { names: Vec::new(), valuation: Vec::new(), relations: BTreeMap::new() }
    }

    /// Adds a world and returns its index. Names must be unique.
    pub fn add_world(&mut self, name: impl Into<String>, true_atoms: impl IntoIterator<Item = String>) -> usize {
        self.names.push(name.into());
        self.valuation.push(true_atoms.into_iter().collect());
        for succ in self.relations.values_mut() {
            succ.push(BTreeSet::new());
        }
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, agent: AgentId, from: usize, to: usize) {
        let n = self.names.len();
        self.relations.entry(agent).or_insert_with(|| vec![BTreeSet::new(); n])[from].insert(to);
    }

    pub fn world_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn world(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn successors(&self, agent: AgentId, world: usize) -> BTreeSet<usize> {
        self.relations.get(&agent).map(|r| r[world].clone()).unwrap_or_default()
    }

    pub fn from_file(file: &ModelFile) -> Result<Self> {
        let mut m = KripkeStructure::new();
        for (name, atoms) in &file.worlds {
            m.add_world(name.clone(), atoms.iter().cloned());
        }
        for (&agent, pairs) in &file.relations {
            let agent = AgentId::new(agent)?;
            m.relations.entry(agent).or_insert_with(|| vec![BTreeSet::new(); m.names.len()]);
            for (u, v) in pairs {
                let from = m.world(u).map_err(|_| Error::DanglingWorld(u.clone()))?;
                let to = m.world(v).map_err(|_| Error::DanglingWorld(v.clone()))?;
                m.add_edge(agent, from, to);
            }
        }
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            worlds: self
                .names
                .iter()
                .zip(&self.valuation)
                .map(|(n, v)| (n.clone(), v.iter().cloned().collect()))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(agent, succ)| {
                    let pairs = succ
                        .iter()
                        .enumerate()
                        .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
                        .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
                        .collect();
                    (agent.index(), pairs)
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }

    /// Lists every transitivity and Euclideanness violation.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (agent, succ) in &self.relations {
            for (u, us) in succ.iter().enumerate() {
                for &v in us {
                    for &w in &succ[v] {
                        if !us.contains(&w) {
                            report.transitivity.push((
                                agent.index(),
                                self.names[u].clone(),
                                self.names[v].clone(),
                                self.names[w].clone(),
                            ));
                        }
                    }
                    for &w in us {
                        if !succ[v].contains(&w) {
                            report.euclidean.push((
                                agent.index(),
                                self.names[u].clone(),
                                self.names[v].clone(),
                                self.names[w].clone(),
                            ));
                        }
                    }
                }
            }
        }
        report
    }

    /// Evaluates `f` at world `w` with the chosen reading of `N`.
    pub fn check(&self, world: usize, f: &Formula, semantics: NSemantics) -> Result<bool> {
        if f.mentions_val() {
            return Err(Error::ValNotAllowed("Kripke evaluation"));
        }
        if semantics == NSemantics::Basic && f.mentions_n() {
            return Err(Error::NotBasic(f.to_string()));
        }
        Ok(self.eval(world, f, semantics))
    }

    pub fn check_basic(&self, world: usize, f: &Formula) -> Result<bool> {
        self.check(world, f, NSemantics::Basic)
    }

    pub fn check_naive_n(&self, world: usize, f: &Formula) -> Result<bool> {
        self.check(world, f, NSemantics::Naive)
    }

    pub fn check_fixed_n(&self, world: usize, f: &Formula) -> Result<bool> {
        self.check(world, f, NSemantics::Fixed)
    }

    fn eval(&self, w: usize, f: &Formula, sem: NSemantics) -> bool {
        match f {
            Formula::Atom(name) => self.valuation[w].contains(name),
            Formula::True => true,
            Formula::False => false,
            Formula::Not(a) => !self.eval(w, a, sem),
            Formula::And(a, b) => self.eval(w, a, sem) && self.eval(w, b, sem),
            Formula::Or(a, b) => self.eval(w, a, sem) || self.eval(w, b, sem),
            Formula::Implies(a, b) => !self.eval(w, a, sem) || self.eval(w, b, sem),
            Formula::Iff(a, b) => self.eval(w, a, sem) == self.eval(w, b, sem),
            Formula::L(i, a) => self.successors(*i, w).into_iter().all(|v| self.eval(v, a, sem)),
            Formula::N(i, a) => {
                let here = self.successors(*i, w);
                (0..self.world_count())
                    .filter(|v| !here.contains(v))
                    .filter(|&v| sem != NSemantics::Fixed || self.successors(*i, v) == here)
                    .all(|v| self.eval(v, a, sem))
            }
            Formula::Val(_) => unreachable!("rejected by check"),
        }
    }
}

impl Default for KripkeStructure {
    fn default() -> Self {
        Self::new()
    }
}
