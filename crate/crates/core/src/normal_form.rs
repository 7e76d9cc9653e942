//! Disjunctive normal form for Val-free formulas.
//!
//! A formula is first flattened ([`normalize`]) into a Boolean combination of
//! atoms and *modal atoms* `L_i χ` / `N_i χ` whose bodies `χ` are
//! `i`-objective. Flattening pushes each modality through the Boolean
//! structure of its argument: the argument is split on the `i`-subjective
//! atoms at its top level, giving a conjunction of clauses
//! `¬τ ∨ χ_τ` where `τ` fixes those atoms and `χ_τ` is `i`-objective. Then
//!
//! ```text
//! L_i(¬τ ∨ χ_τ)  ⇔  ¬τ ∨ L_i χ_τ
//! ```
//!
//! because `¬τ` is `i`-subjective and therefore known to agent `i` (and to
//! the `N_i` side likewise). The flattened skeleton is then expanded to DNF
//! lazily; each term is grouped into per-agent blocks.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{AgentId, Formula};
use crate::simplify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    L,
    N,
}

impl Modality {
    fn wrap(self, agent: AgentId, body: Formula) -> Formula {
        match self {
            Modality::L => Formula::l(agent, body),
            Modality::N => Formula::n(agent, body),
        }
    }
}

fn top_level_modal_of(f: &Formula, agent: AgentId) -> Option<&Formula> {
    match f {
        Formula::L(i, _) | Formula::N(i, _) if *i == agent => Some(f),
        Formula::Not(a) => top_level_modal_of(a, agent),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            top_level_modal_of(a, agent).or_else(|| top_level_modal_of(b, agent))
        }
        _ => None,
    }
}

/// Replaces top-level occurrences of `target` by a constant and folds.
fn assign(f: &Formula, target: &Formula, value: bool) -> Formula {
    if f == target {
        return if value { Formula::True } else { Formula::False };
    }
    match f {
        Formula::Not(a) => simplify::not(assign(a, target, value)),
        Formula::And(a, b) => simplify::and(assign(a, target, value), assign(b, target, value)),
        Formula::Or(a, b) => simplify::or(assign(a, target, value), assign(b, target, value)),
        Formula::Implies(a, b) => simplify::implies(assign(a, target, value), assign(b, target, value)),
        Formula::Iff(a, b) => simplify::iff(assign(a, target, value), assign(b, target, value)),
        _ => f.clone(),
    }
}

/// Flattens a Val-free formula into a Boolean combination of atoms and modal
/// atoms `L_i χ` / `N_i χ` with `i`-objective, already flattened `χ`.
pub fn normalize(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Val(_) => return Err(Error::ValNotAllowed("normal form")),
        Formula::Not(a) => simplify::not(normalize(a)?),
        Formula::And(a, b) => simplify::and(normalize(a)?, normalize(b)?),
        Formula::Or(a, b) => simplify::or(normalize(a)?, normalize(b)?),
        Formula::Implies(a, b) => simplify::implies(normalize(a)?, normalize(b)?),
        Formula::Iff(a, b) => simplify::iff(normalize(a)?, normalize(b)?),
        Formula::L(i, a) => push_modality(Modality::L, *i, normalize(a)?),
        Formula::N(i, a) => push_modality(Modality::N, *i, normalize(a)?),
    })
}

fn push_modality(kind: Modality, agent: AgentId, body: Formula) -> Formula {
    let mut clauses = Vec::new();
    split(kind, agent, body, &mut Vec::new(), &mut clauses);
    clauses.into_iter().fold(Formula::True, simplify::and)
}

fn split(kind: Modality, agent: AgentId, body: Formula, tau: &mut Vec<(Formula, bool)>, out: &mut Vec<Formula>) {
    if let Some(m) = top_level_modal_of(&body, agent).cloned() {
        for value in [true, false] {
            let residual = assign(&body, &m, value);
            tau.push((m.clone(), value));
            split(kind, agent, residual, tau, out);
            tau.pop();
        }
        return;
    }
    if body == Formula::True {
        // K_i true is a theorem; the clause is trivially true.
        return;
    }
    // A clause `¬τ ∨ K_i χ`. When χ is false and ¬τ already contains a
    // positive `K_i ψ` of the same modality, `K_i false` is subsumed.
    let subsumed = body == Formula::False
        && tau.iter().any(|(m, value)| {
            !*value
                && match (kind, m) {
                    (Modality::L, Formula::L(..)) | (Modality::N, Formula::N(..)) => true,
                    _ => false,
                }
        });
    let mut clause = if subsumed { Formula::False } else { kind.wrap(agent, body) };
    for (m, value) in tau.iter() {
        let lit = if *value { simplify::not(m.clone()) } else { m.clone() };
        clause = simplify::or(clause, lit);
    }
    out.push(clause);
}

/// A literal of the flattened skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    Prop { atom: String, positive: bool },
    Modal { kind: Modality, agent: AgentId, body: Formula, positive: bool },
}

impl Literal {
    fn complements(&self, other: &Literal) -> bool {
        match (self, other) {
            (Literal::Prop { atom: a, positive: x }, Literal::Prop { atom: b, positive: y }) => a == b && x != y,
            (
                Literal::Modal { kind: k1, agent: a1, body: b1, positive: x },
                Literal::Modal { kind: k2, agent: a2, body: b2, positive: y },
            ) => k1 == k2 && a1 == a2 && x != y && b1 == b2,
            _ => false,
        }
    }
}

#[derive(Debug)]
enum Nnf {
    True,
    False,
    Lit(Literal),
    And(Vec<Arc<Nnf>>),
    Or(Vec<Arc<Nnf>>),
}

fn to_nnf(f: &Formula, positive: bool) -> Nnf {
    match f {
        Formula::True => {
            if positive {
                Nnf::True
            } else {
                Nnf::False
            }
        }
        Formula::False => {
            if positive {
                Nnf::False
            } else {
                Nnf::True
            }
        }
        Formula::Atom(name) => Nnf::Lit(Literal::Prop { atom: name.clone(), positive }),
        Formula::L(i, body) => Nnf::Lit(Literal::Modal { kind: Modality::L, agent: *i, body: (**body).clone(), positive }),
        Formula::N(i, body) => Nnf::Lit(Literal::Modal { kind: Modality::N, agent: *i, body: (**body).clone(), positive }),
        Formula::Not(a) => to_nnf(a, !positive),
        Formula::And(a, b) => {
            if positive {
                and_nnf(vec![to_nnf(a, true), to_nnf(b, true)])
            } else {
                or_nnf(vec![to_nnf(a, false), to_nnf(b, false)])
            }
        }
        Formula::Or(a, b) => {
            if positive {
                or_nnf(vec![to_nnf(a, true), to_nnf(b, true)])
            } else {
                and_nnf(vec![to_nnf(a, false), to_nnf(b, false)])
            }
        }
        Formula::Implies(a, b) => {
            if positive {
                or_nnf(vec![to_nnf(a, false), to_nnf(b, true)])
            } else {
                and_nnf(vec![to_nnf(a, true), to_nnf(b, false)])
            }
        }
        Formula::Iff(a, b) => {
            let (x, y) = if positive { (true, true) } else { (true, false) };
            or_nnf(vec![
                and_nnf(vec![to_nnf(a, x), to_nnf(b, y)]),
                and_nnf(vec![to_nnf(a, !x), to_nnf(b, !y)]),
            ])
        }
        // Normalized input never contains Val.
        Formula::Val(_) => unreachable!("Val in flattened formula"),
    }
}

fn and_nnf(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Nnf::True => {}
            Nnf::False => return Nnf::False,
            Nnf::And(inner) => out.extend(inner),
            other => out.push(Arc::new(other)),
        }
    }
    match out.len() {
        0 => Nnf::True,
        1 => Arc::try_unwrap(out.pop().expect("one part")).unwrap_or_else(|a| clone_nnf(&a)),
        _ => Nnf::And(out),
    }
}

fn or_nnf(parts: Vec<Nnf>) -> Nnf {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Nnf::False => {}
            Nnf::True => return Nnf::True,
            Nnf::Or(inner) => out.extend(inner),
            other => out.push(Arc::new(other)),
        }
    }
    match out.len() {
        0 => Nnf::False,
        1 => Arc::try_unwrap(out.pop().expect("one part")).unwrap_or_else(|a| clone_nnf(&a)),
        _ => Nnf::Or(out),
    }
}

fn clone_nnf(n: &Nnf) -> Nnf {
    match n {
        Nnf::True => Nnf::True,
        Nnf::False => Nnf::False,
        Nnf::Lit(l) => Nnf::Lit(l.clone()),
        Nnf::And(v) => Nnf::And(v.clone()),
        Nnf::Or(v) => Nnf::Or(v.clone()),
    }
}

type Term = Vec<Literal>;

/// Appends `extra` to `base`; `None` on a complementary pair.
fn merge_terms(base: &Term, extra: &Term) -> Option<Term> {
    let mut out = base.clone();
    for lit in extra {
        if out.iter().any(|l| l.complements(lit)) {
            return None;
        }
        if !out.contains(lit) {
            out.push(lit.clone());
        }
    }
    Some(out)
}

/// Lazy enumeration of DNF terms; state is linear in the formula size.
enum TermIter {
    Once(Option<Term>),
    Or { parts: Vec<Arc<Nnf>>, next: usize, current: Box<TermIter> },
    And { head: Box<TermIter>, tail: Vec<Arc<Nnf>>, left: Option<Term>, right: Box<TermIter> },
}

impl TermIter {
    fn new(node: &Arc<Nnf>) -> TermIter {
        Self::over(node.as_ref())
    }

    fn over(node: &Nnf) -> TermIter {
        match node {
            Nnf::True => TermIter::Once(Some(Vec::new())),
            Nnf::False => TermIter::Once(None),
            Nnf::Lit(l) => TermIter::Once(Some(vec![l.clone()])),
            Nnf::Or(parts) => TermIter::Or {
                parts: parts.clone(),
                next: 1,
                current: Box::new(TermIter::new(&parts[0])),
            },
            Nnf::And(parts) => Self::product(parts),
        }
    }

    fn product(parts: &[Arc<Nnf>]) -> TermIter {
        match parts {
            [] => TermIter::Once(Some(Vec::new())),
            [only] => TermIter::new(only),
            [first, rest @ ..] => TermIter::And {
                head: Box::new(TermIter::new(first)),
                tail: rest.to_vec(),
                left: None,
                right: Box::new(TermIter::Once(None)),
            },
        }
    }
}

impl Iterator for TermIter {
    type Item = Term;

    fn next(&mut self) -> Option<Term> {
        match self {
            TermIter::Once(slot) => slot.take(),
            TermIter::Or { parts, next, current } => loop {
                if let Some(t) = current.next() {
                    return Some(t);
                }
                if *next >= parts.len() {
                    return None;
                }
                **current = TermIter::new(&parts[*next]);
                *next += 1;
            },
            TermIter::And { head, tail, left, right } => loop {
                if let Some(l) = left.as_ref() {
                    while let Some(r) = right.next() {
                        if let Some(t) = merge_terms(l, &r) {
                            return Some(t);
                        }
                    }
                }
                let l = head.next()?;
                *left = Some(l);
                **right = TermIter::product(tail);
            },
        }
    }
}

/// One agent's conjuncts within a disjunct.
///
/// After [`merge_positive`] each of `pos_l` / `pos_n` holds exactly one
/// formula (`True` when the disjunct had none).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AgentBlock {
    pub agent: AgentId,
    pub pos_l: Vec<Formula>,
    pub neg_l: Vec<Formula>,
    pub pos_n: Vec<Formula>,
    pub neg_n: Vec<Formula>,
}

impl AgentBlock {
    pub fn empty(agent: AgentId) -> Self {
        AgentBlock { agent, pos_l: Vec::new(), neg_l: Vec::new(), pos_n: Vec::new(), neg_n: Vec::new() }
    }

    /// The merged positive `L_i` argument.
    pub fn alpha(&self) -> Formula {
        Formula::conj(self.pos_l.iter().cloned())
    }

    /// The merged positive `N_i` argument.
    pub fn gamma(&self) -> Formula {
        Formula::conj(self.pos_n.iter().cloned())
    }

    pub fn to_formula(&self) -> Formula {
        let i = self.agent;
        let mut parts = vec![Formula::l(i, self.alpha())];
        parts.extend(self.neg_l.iter().map(|f| Formula::not(Formula::l(i, f.clone()))));
        parts.push(Formula::n(i, self.gamma()));
        parts.extend(self.neg_n.iter().map(|f| Formula::not(Formula::n(i, f.clone()))));
        Formula::conj(parts)
    }
}

/// Collapses the positive `L_i` (resp. `N_i`) conjuncts into one conjunction.
pub fn merge_positive(block: AgentBlock) -> AgentBlock {
    let merge = |items: Vec<Formula>| vec![items.into_iter().reduce(Formula::and).unwrap_or(Formula::True)];
    AgentBlock { pos_l: merge(block.pos_l), pos_n: merge(block.pos_n), ..block }
}

/// Counters shared by one disjunct stream and the disjuncts it yields.
#[derive(Debug, Default)]
pub struct StreamStats {
    live: AtomicUsize,
    peak: AtomicUsize,
    produced: AtomicUsize,
}

impl StreamStats {
    /// Most disjuncts alive at the same time.
    pub fn peak(&self) -> usize {
        self.peak.load(Ordering::Relaxed)
    }

    pub fn produced(&self) -> usize {
        self.produced.load(Ordering::Relaxed)
    }

    pub fn live(&self) -> usize {
        self.live.load(Ordering::Relaxed)
    }
}

#[derive(Debug)]
struct LiveToken(Arc<StreamStats>);

impl LiveToken {
    fn new(stats: &Arc<StreamStats>) -> Self {
        let now = stats.live.fetch_add(1, Ordering::Relaxed) + 1;
        stats.peak.fetch_max(now, Ordering::Relaxed);
        LiveToken(Arc::clone(stats))
    }
}

impl Clone for LiveToken {
    fn clone(&self) -> Self {
        LiveToken::new(&self.0)
    }
}

impl Drop for LiveToken {
    fn drop(&mut self) {
        self.0.live.fetch_sub(1, Ordering::Relaxed);
    }
}

/// Splits literals into propositional ones and merged blocks sorted by agent.
pub(crate) fn group(term: impl IntoIterator<Item = Literal>) -> (Vec<Formula>, Vec<AgentBlock>) {
    let mut props = Vec::new();
    let mut blocks: Vec<AgentBlock> = Vec::new();
    for lit in term {
        match lit {
            Literal::Prop { atom, positive } => {
                let a = Formula::Atom(atom);
                props.push(if positive { a } else { Formula::not(a) });
            }
            Literal::Modal { kind, agent, body, positive } => {
                let idx = match blocks.iter().position(|b| b.agent == agent) {
                    Some(idx) => idx,
                    None => {
                        blocks.push(AgentBlock::empty(agent));
                        blocks.len() - 1
                    }
                };
                let b = &mut blocks[idx];
                match (kind, positive) {
                    (Modality::L, true) => b.pos_l.push(body),
                    (Modality::L, false) => b.neg_l.push(body),
                    (Modality::N, true) => b.pos_n.push(body),
                    (Modality::N, false) => b.neg_n.push(body),
                }
            }
        }
    }
    blocks.sort_by_key(|b| b.agent);
    (props, blocks.into_iter().map(merge_positive).collect())
}

/// `σ ∧ ⋀_i S_i` with propositional `σ` and one block per mentioned agent.
#[derive(Clone, Debug)]
pub struct NormalFormDisjunct {
    pub sigma: Formula,
    pub blocks: Vec<AgentBlock>,
    _token: Option<LiveToken>,
}

impl PartialEq for NormalFormDisjunct {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.blocks == other.blocks
    }
}

impl NormalFormDisjunct {
    fn from_term(term: Term, stats: &Arc<StreamStats>) -> Self {
        Self::from_literals(term, stats)
    }

    /// Groups literals into `σ` and merged agent blocks; counts as one
    /// produced disjunct of `stats`.
    pub(crate) fn from_literals(term: impl IntoIterator<Item = Literal>, stats: &Arc<StreamStats>) -> Self {
        let (props, blocks) = group(term);
        stats.produced.fetch_add(1, Ordering::Relaxed);
        NormalFormDisjunct {
            sigma: Formula::conj(props),
            blocks,
            _token: Some(LiveToken::new(stats)),
        }
    }

    /// `σ` is left out when it is `true` and some block is present.
    pub fn to_formula(&self) -> Formula {
        let sigma = (self.sigma != Formula::True || self.blocks.is_empty()).then(|| self.sigma.clone());
        Formula::conj(sigma.into_iter().chain(self.blocks.iter().map(AgentBlock::to_formula)))
    }
}

/// Streams the normal-form disjuncts of a Val-free formula in DNF order.
pub struct DisjunctStream {
    terms: TermIter,
    stats: Arc<StreamStats>,
}

impl DisjunctStream {
    pub fn stats(&self) -> Arc<StreamStats> {
        Arc::clone(&self.stats)
    }
}

impl Iterator for DisjunctStream {
    type Item = NormalFormDisjunct;

    fn next(&mut self) -> Option<NormalFormDisjunct> {
        let term = self.terms.next()?;
        Some(NormalFormDisjunct::from_term(term, &self.stats))
    }
}

pub fn to_normal_form(f: &Formula) -> Result<DisjunctStream> {
    let flat = normalize(f)?;
    Ok(stream_flattened(&flat))
}

pub(crate) fn stream_flattened(flat: &Formula) -> DisjunctStream {
    let root = Arc::new(to_nnf(flat, true));
    DisjunctStream { terms: TermIter::new(&root), stats: Arc::new(StreamStats::default()) }
}

/// The disjunction of a stream, as a single formula. The disjunction is
/// balanced so that its depth grows logarithmically with the stream.
pub fn reassemble(disjuncts: impl IntoIterator<Item = NormalFormDisjunct>) -> Formula {
    let items: Vec<Formula> = disjuncts.into_iter().map(|d| d.to_formula()).collect();
    balanced_or(items)
}

fn balanced_or(mut items: Vec<Formula>) -> Formula {
    match items.len() {
        0 => Formula::False,
        1 => items.pop().expect("one item"),
        n => {
            let right = items.split_off(n / 2);
            Formula::or(balanced_or(items), balanced_or(right))
        }
    }
}
