//! Consistency and validity for the full language with `Val`.
//!
//! `consistent(φ)`:
//! 1. replace every `Val ψ` (innermost first) by `true`/`false` according to
//!    `valid(ψ)`;
//! 2. stream the normal-form disjuncts of the result (see [`Enumeration`]);
//! 3. a disjunct `σ ∧ S_1 ∧ … ∧ S_n` is consistent iff `σ` is
//!    propositionally satisfiable and every agent block is;
//! 4. a block `L_i α ∧ ⋀_j ¬L_i φ_j ∧ N_i γ ∧ ⋀_l ¬N_i ψ_l` is consistent iff
//!    each `α ∧ ¬φ_j` and each `γ ∧ ¬ψ_l` is consistent and `α ∨ γ` is
//!    valid.
//!
//! Every recursive call works on a formula of strictly smaller modal rank,
//! and only one disjunct per stream is alive at any time.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{classify::rank, AgentId, Formula};
use crate::normal_form::{self, AgentBlock, Literal, NormalFormDisjunct, StreamStats};
use crate::skeleton::{Assignment, Skeleton};
use crate::prop;
use crate::simplify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Satisfiable,
    Unsatisfiable,
    Valid,
    Invalid,
}

impl Status {
    /// True for `Satisfiable` and `Valid`.
    pub fn holds(self) -> bool {
        matches!(self, Status::Satisfiable | Status::Valid)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Satisfiable => "SAT",
            Status::Unsatisfiable => "UNSAT",
            Status::Valid => "VALID",
            Status::Invalid => "INVALID",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    Consistent,
    EliminateVal,
    Disjunct,
    PropSat,
    BlockNegL,
    BlockNegN,
    BlockUnion,
    Memo,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    /// Nesting level of the enclosing `consistent` call.
    pub level: usize,
    pub rule: Rule,
    /// Modal rank (`Val` counted as a modality) of `formula`.
    pub rank: usize,
    pub formula: String,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:indent$}{:?} [rank {}] {}", "", self.rule, self.rank, self.formula, indent = 2 * self.level)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub trace: Option<Vec<TraceStep>>,
}

/// How the disjuncts of a flattened formula are produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Enumeration {
    /// Branch on the atoms and modal atoms of the flattened skeleton,
    /// modal atoms first, checking each agent block as soon as one of its
    /// literals is fixed. Leaves are implicants of the skeleton, i.e.
    /// normal-form disjuncts, and an inconsistent block prunes every
    /// extension at once.
    #[default]
    Split,
    /// Left-to-right DNF expansion of the skeleton, one term at a time.
    Dnf,
}

/// Stateful driver for the decision procedure: optional trace, deadline and
/// memo table. One `Decider` must not be shared across threads; create one
/// per worker instead.
#[derive(Default)]
pub struct Decider {
    trace: Option<Vec<TraceStep>>,
    deadline: Option<Instant>,
    memo: Option<HashMap<Formula, bool>>,
    enumeration: Enumeration,
    level: usize,
    top_stats: Option<Arc<StreamStats>>,
}

impl Decider {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn with_memo(mut self) -> Self {
        self.memo = Some(HashMap::new());
        self
    }

    pub fn with_enumeration(mut self, enumeration: Enumeration) -> Self {
        self.enumeration = enumeration;
        self
    }

    pub fn take_trace(&mut self) -> Option<Vec<TraceStep>> {
        self.trace.as_mut().map(std::mem::take)
    }

    /// Counters of the outermost disjunct stream of the last top-level call.
    pub fn top_level_stats(&self) -> Option<Arc<StreamStats>> {
        self.top_stats.clone()
    }

    fn record(&mut self, rule: Rule, f: &Formula) {
        if let Some(trace) = self.trace.as_mut() {
            trace.push(TraceStep { level: self.level, rule, rank: rank(f), formula: f.to_string() });
        }
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    /// Replaces each `Val ψ` by a constant, innermost first.
    pub fn eliminate_val(&mut self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
            Formula::Not(a) => Formula::not(self.eliminate_val(a)?),
            Formula::And(a, b) => Formula::and(self.eliminate_val(a)?, self.eliminate_val(b)?),
            Formula::Or(a, b) => Formula::or(self.eliminate_val(a)?, self.eliminate_val(b)?),
            Formula::Implies(a, b) => Formula::implies(self.eliminate_val(a)?, self.eliminate_val(b)?),
            Formula::Iff(a, b) => Formula::iff(self.eliminate_val(a)?, self.eliminate_val(b)?),
            Formula::L(i, a) => Formula::l(*i, self.eliminate_val(a)?),
            Formula::N(i, a) => Formula::n(*i, self.eliminate_val(a)?),
            Formula::Val(a) => {
                let inner = self.eliminate_val(a)?;
                self.record(Rule::EliminateVal, f);
                if self.valid(&inner)? {
                    Formula::True
                } else {
                    Formula::False
                }
            }
        })
    }

    pub fn valid(&mut self, f: &Formula) -> Result<bool> {
        Ok(!self.consistent(&simplify::not(f.clone()))?)
    }

    pub fn consistent(&mut self, f: &Formula) -> Result<bool> {
        self.check_deadline()?;
        self.record(Rule::Consistent, f);
        if let Some(&hit) = self.memo.as_ref().and_then(|m| m.get(f)) {
            self.record(Rule::Memo, f);
            return Ok(hit);
        }
        self.level += 1;
        let outcome = self.consistent_uncached(f);
        self.level -= 1;
        let answer = outcome?;
        if let Some(memo) = self.memo.as_mut() {
            memo.insert(f.clone(), answer);
        }
        Ok(answer)
    }

    fn consistent_uncached(&mut self, f: &Formula) -> Result<bool> {
        let val_free = if f.mentions_val() { self.eliminate_val(f)? } else { f.clone() };
        let flat = normal_form::normalize(&val_free)?;
        match self.enumeration {
            Enumeration::Dnf => self.consistent_dnf(&flat),
            Enumeration::Split => self.consistent_split(&flat),
        }
    }

    fn consistent_dnf(&mut self, flat: &Formula) -> Result<bool> {
        let stream = normal_form::stream_flattened(flat);
        if self.level == 1 {
            self.top_stats = Some(stream.stats());
        }
        for disjunct in stream {
            self.check_deadline()?;
            if self.disjunct_consistent(&disjunct, true)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn disjunct_consistent(&mut self, disjunct: &NormalFormDisjunct, check_blocks: bool) -> Result<bool> {
        self.record(Rule::Disjunct, &disjunct.to_formula());
        self.record(Rule::PropSat, &disjunct.sigma);
        if !prop::prop_sat(&disjunct.sigma)? {
            return Ok(false);
        }
        if check_blocks {
            for block in &disjunct.blocks {
                if !self.block_consistent(block)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn consistent_split(&mut self, flat: &Formula) -> Result<bool> {
        let skeleton = Skeleton::new(flat);
        let stats = Arc::new(StreamStats::default());
        if self.level == 1 {
            self.top_stats = Some(Arc::clone(&stats));
        }
        let mut search = Search { skeleton, assign: Vec::new(), stats, blocks: HashMap::new() };
        search.assign = vec![None; search.skeleton.len()];
        self.split(&mut search)
    }

    fn split(&mut self, s: &mut Search) -> Result<bool> {
        self.check_deadline()?;
        let (value, next) = s.skeleton.status(&s.assign);
        match value {
            Some(false) => return Ok(false),
            // Blocks were checked as their literals were fixed.
            Some(true) => {
                let disjunct = NormalFormDisjunct::from_literals(s.skeleton.literals(&s.assign), &s.stats);
                return self.disjunct_consistent(&disjunct, false);
            }
            None => {}
        }
        let var = next.expect("an undetermined skeleton has an unassigned variable");
        for value in [true, false] {
            s.assign[var] = Some(value);
            let open = match s.skeleton.agent_of(var) {
                Some(agent) => self.partial_block_consistent(s, agent)?,
                None => true,
            };
            if open && self.split(s)? {
                s.assign[var] = None;
                return Ok(true);
            }
        }
        s.assign[var] = None;
        Ok(false)
    }

    /// Block consistency is antitone in the literal set, so a failing
    /// partial block closes the branch.
    fn partial_block_consistent(&mut self, s: &mut Search, agent: AgentId) -> Result<bool> {
        let lits = s.skeleton.literals(&s.assign).filter(|l| matches!(l, Literal::Modal { agent: a, .. } if *a == agent));
        let (_, mut blocks) = normal_form::group(lits);
        let block = blocks.pop().expect("the agent has a fixed literal");
        if let Some(&known) = s.blocks.get(&block) {
            return Ok(known);
        }
        let ok = self.block_consistent(&block)?;
        if s.blocks.len() >= BLOCK_CACHE_LIMIT {
            s.blocks.clear();
        }
        s.blocks.insert(block, ok);
        Ok(ok)
    }

    /// The V3 antecedent for one agent block (positives already merged).
    pub fn block_consistent(&mut self, block: &AgentBlock) -> Result<bool> {
        let alpha = block.alpha();
        let gamma = block.gamma();
        let union = simplify::or(alpha.clone(), gamma.clone());
        if union != Formula::True {
            self.record(Rule::BlockUnion, &union);
            if !self.valid(&union)? {
                return Ok(false);
            }
        }
        for phi in &block.neg_l {
            let f = simplify::and(alpha.clone(), simplify::not(phi.clone()));
            self.record(Rule::BlockNegL, &f);
            if !self.consistent(&f)? {
                return Ok(false);
            }
        }
        for psi in &block.neg_n {
            let f = simplify::and(gamma.clone(), simplify::not(psi.clone()));
            self.record(Rule::BlockNegN, &f);
            if !self.consistent(&f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn consistent_verdict(&mut self, f: &Formula) -> Result<Verdict> {
        let ok = self.consistent(f)?;
        Ok(Verdict {
            status: if ok { Status::Satisfiable } else { Status::Unsatisfiable },
            trace: self.take_trace(),
        })
    }

    pub fn valid_verdict(&mut self, f: &Formula) -> Result<Verdict> {
        let ok = self.valid(f)?;
        Ok(Verdict { status: if ok { Status::Valid } else { Status::Invalid }, trace: self.take_trace() })
    }
}

const BLOCK_CACHE_LIMIT: usize = 4096;

/// State of one split search; the block cache lives only as long as the
/// search.
struct Search {
    skeleton: Skeleton,
    assign: Assignment,
    stats: Arc<StreamStats>,
    blocks: HashMap<AgentBlock, bool>,
}

pub fn consistent_ax(f: &Formula) -> Verdict {
    Decider::new().consistent_verdict(f).expect("no deadline set")
}

pub fn valid_ax(f: &Formula) -> Verdict {
    Decider::new().valid_verdict(f).expect("no deadline set")
}

pub fn eliminate_val(f: &Formula) -> Formula {
    Decider::new().eliminate_val(f).expect("no deadline set")
}

pub fn block_consistent(block: &AgentBlock) -> bool {
    Decider::new().block_consistent(block).expect("no deadline set")
}

pub use crate::prop::prop_sat;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, AgentId};

    fn f(text: &str) -> Formula {
        parse(text, 2).unwrap()
    }

    fn sat(text: &str) -> bool {
        consistent_ax(&f(text)).status.holds()
    }

    fn valid(text: &str) -> bool {
        valid_ax(&f(text)).status.holds()
    }

    fn block(alpha: &str, neg_l: &[&str], gamma: &str, neg_n: &[&str]) -> AgentBlock {
        AgentBlock {
            agent: AgentId::new(1).unwrap(),
            pos_l: vec![f(alpha)],
            neg_l: neg_l.iter().map(|t| f(t)).collect(),
            pos_n: vec![f(gamma)],
            neg_n: neg_n.iter().map(|t| f(t)).collect(),
        }
    }

    #[test]
    fn val_elimination_examples() {
        assert_eq!(eliminate_val(&f("V (p | ~p)")), Formula::True);
        assert_eq!(eliminate_val(&f("V p")), Formula::False);
        assert_eq!(eliminate_val(&f("C p")), Formula::not(Formula::False));
        assert!(valid("C p"));
        assert!(!sat("V p"));
    }

    #[test]
    fn separation_facts() {
        assert!(sat("O1 ~O2 p"));
        assert!(!sat("N1 ~O2 p & L1 ~O2 p"));
    }

    #[test]
    fn only_knowing_p_excludes_believing_q() {
        assert!(!sat("O1 p & L1 q"));
    }

    #[test]
    fn block_examples() {
        assert!(block_consistent(&block("p", &[], "~p", &[])));
        assert!(!block_consistent(&block("false", &[], "false", &[])));
        assert!(block_consistent(&block("p", &["q"], "true", &[])));
        assert!(!block_consistent(&block("p", &["p"], "true", &[])));
    }

    #[test]
    fn derived_theorems() {
        assert!(valid("O1 (~L1 L2 p -> ~L2 p) -> L1 ~L2 p"));
        assert!(valid("L2 O1 (~L1 ~p -> p) -> L2 L1 p"));
        assert!(valid("N1 L2 p -> ~L1 L2 p"));
        assert!(valid("O1 (L2 p & (~L1 L2 p -> ~L2 p)) -> L1 L2 p"));
    }

    #[test]
    fn prop_sat_examples() {
        assert!(!prop_sat(&f("p & ~p")).unwrap());
        assert!(prop_sat(&f("p & ~q")).unwrap());
        assert!(!prop_sat(&f("(p -> q) & p & ~q")).unwrap());
    }

    #[test]
    fn duality_and_modal_basics() {
        assert!(valid("L1 p -> L1 L1 p"));
        assert!(valid("~L1 p -> L1 ~L1 p"));
        assert!(!valid("L1 p -> p"));
        assert!(sat("L1 false"));
        assert!(!valid("L1 N1 p -> N1 p"));
        assert!(valid("N1 p -> L1 N1 p"));
    }

    #[test]
    fn trace_ranks_decrease() {
        let mut d = Decider::new().with_trace();
        d.valid(&f("L2 O1 (~L1 ~p -> p) -> L2 L1 p")).unwrap();
        let trace = d.take_trace().unwrap();
        assert!(!trace.is_empty());
        let mut stack: Vec<usize> = Vec::new();
        for step in trace.iter().filter(|s| s.rule == Rule::Consistent) {
            stack.truncate(step.level);
            if let Some(&parent) = stack.last() {
                assert!(step.rank < parent, "{step}");
            }
            stack.push(step.rank);
        }
    }

    #[test]
    fn deadline_in_past_times_out() {
        let mut d = Decider::new().with_deadline(Instant::now());
        assert!(matches!(d.consistent(&f("p")), Err(Error::Timeout)));
    }

    #[test]
    fn enumerations_agree() {
        use crate::corpus::{GenConfig, Generator, Profile};
        let cfg = GenConfig { depth: 2, atoms: 2, agents: 2, size: 8, val: true };
        for g in Generator::new(11, Profile::Full, cfg).take(150) {
            let split = Decider::new().consistent(&g).unwrap();
            let dnf = Decider::new().with_enumeration(Enumeration::Dnf).consistent(&g).unwrap();
            assert_eq!(split, dnf, "{g}");
        }
    }
}
