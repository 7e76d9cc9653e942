//! Belief queries: what does agent `i` believe if all it knows is a
//! knowledge base?
//!
//! [`believes`] answers through the decision procedure (`O_i kb → L_i query`
//! valid). [`only_knowing_sets`] is the single-agent finite picture: every
//! world set `W` over `Φ` with `w ∈ W ⇔ (W, w) ⊨ kb`.

use std::fmt;

use serde::Serialize;

use crate::decision::Decider;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::finite::{Alphabet, Situation, WorldSet};
use crate::formula::{AgentId, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefQuery {
    pub agent: AgentId,
    pub kb: Formula,
    pub query: Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

impl BeliefQuery {
    pub fn new(agent: AgentId, kb: Formula, query: Formula) -> Self {
        BeliefQuery { agent, kb, query }
    }

    /// `O_i kb → L_i query`.
    pub fn entailment(&self) -> Formula {
        Formula::implies(Formula::o(self.agent, self.kb.clone()), Formula::l(self.agent, self.query.clone()))
    }

    pub fn decide(&self, decider: &mut Decider) -> Result<Answer> {
        Ok(if decider.valid(&self.entailment())? { Answer::Yes } else { Answer::No })
    }
}

pub fn believes(q: &BeliefQuery) -> Answer {
    q.decide(&mut Decider::new()).expect("no deadline set")
}

/// Is "all agent `i` knows is `kb`" a realizable epistemic state?
pub fn kb_coherent(agent: AgentId, kb: &Formula) -> bool {
    Decider::new().consistent(&Formula::o(agent, kb.clone())).expect("no deadline set")
}

/// Every `W` with `w ∈ W ⇔ (W, w) ⊨ kb` for all worlds `w` over `Φ`, in
/// ascending bitmask order.
pub fn only_knowing_sets(kb: &Formula, alphabet: &Alphabet, bound: usize, strategy: Strategy) -> Result<Vec<WorldSet>> {
    alphabet.check(kb)?;
    if alphabet.len() > bound {
        return Err(Error::BoundExceeded { atoms: alphabet.len(), bound });
    }
    let all = alphabet.all_worlds();
    Ok(exec::filter(all + 1, strategy, |known| {
        alphabet.worlds().all(|w| {
            let s = Situation { known, actual: w }.extend(alphabet);
            (known & (1 << w) != 0) == alphabet.eval(s.w_l, s.w_n, w, kb)
        })
    }))
}
