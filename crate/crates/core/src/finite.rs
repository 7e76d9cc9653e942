//! Single-agent semantics over a finite alphabet `Φ`.
//!
//! A world is a bitmask over `Φ` (bit `k` set iff the `k`-th atom is true)
//! and a set of worlds is a bitmask over the `2^|Φ|` worlds.
//!
//! Enumeration cost of [`oracle_valid`]:
//!
//! | `|Φ|` | complementary `2^(2^|Φ|)·2^|Φ|` | extended `3^(2^|Φ|)·2^|Φ|` |
//! |-------|-------------------------------|-----------------------------|
//! | 1     | 8                             | 18                          |
//! | 2     | 64                            | 324                         |
//! | 3     | 2 048                         | 52 488                      |
//! | 4     | 1 048 576                     | 688 747 536                 |
//!
//! The default bound is [`DEFAULT_BOUND`]; alphabets beyond [`HARD_MAX`]
//! are rejected outright.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::formula::{AgentId, Formula};
use crate::normal_form::normalize;
use crate::simplify;

pub const DEFAULT_BOUND: usize = 2;
pub const HARD_MAX: usize = 5;

pub type World = u32;
pub type WorldSet = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    atoms: Vec<String>,
}

impl Alphabet {
    /// Duplicates are dropped; order fixes the bit layout of worlds.
    pub fn new<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut out: Vec<String> = Vec::new();
        for a in atoms {
            let a = a.into();
            if !out.contains(&a) {
                out.push(a);
            }
        }
        if out.len() > HARD_MAX {
            return Err(Error::BoundExceeded { atoms: out.len(), bound: HARD_MAX });
        }
        Ok(Alphabet { atoms: out })
    }

    /// Parses a comma-separated list such as `p,q`.
    pub fn parse(list: &str) -> Result<Self> {
        Self::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn world_count(&self) -> u32 {
        1 << self.atoms.len()
    }

    pub fn all_worlds(&self) -> WorldSet {
        if self.world_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.world_count()) - 1
        }
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        0..self.world_count()
    }

    /// The world making exactly the listed atoms true.
    pub fn world_of(&self, true_atoms: &[&str]) -> Result<World> {
        let mut w = 0;
        for a in true_atoms {
            let k = self.index(a).ok_or_else(|| Error::AtomOutsideAlphabet(a.to_string()))?;
            w |= 1 << k;
        }
        Ok(w)
    }

    pub fn set_of(&self, worlds: impl IntoIterator<Item = World>) -> WorldSet {
        worlds.into_iter().fold(0, |s, w| s | (1 << w))
    }

    fn index(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    /// The conjunction of all literals true at `w`.
    pub fn world_formula(&self, w: World) -> Formula {
        Formula::conj(self.atoms.iter().enumerate().map(|(k, a)| {
            let atom = Formula::atom(a.clone());
            if w & (1 << k) != 0 {
                atom
            } else {
                Formula::not(atom)
            }
        }))
    }

    /// The disjunction of the world formulas of `set`.
    pub fn set_formula(&self, set: WorldSet) -> Formula {
        Formula::disj(self.worlds().filter(|w| set & (1 << w) != 0).map(|w| self.world_formula(w)))
    }

    pub fn show_world(&self, w: World) -> String {
        if self.atoms.is_empty() {
            return "true".into();
        }
        self.world_formula(w).to_string()
    }

    pub fn show_set(&self, set: WorldSet) -> String {
        let items: Vec<String> = self.worlds().filter(|w| set & (1 << w) != 0).map(|w| self.show_world(w)).collect();
        format!("{{{}}}", items.join(", "))
    }

    /// Checks that `f` is Val-free, mentions only agent 1 and only atoms of `Φ`.
    pub fn check(&self, f: &Formula) -> Result<()> {
        if f.mentions_val() {
            return Err(Error::ValNotAllowed("finite semantics"));
        }
        if f.agents().iter().any(|a| a.index() != 1) {
            return Err(Error::NotSingleAgent(f.to_string()));
        }
        if let Some(a) = f.atoms().into_iter().find(|a| self.index(a).is_none()) {
            return Err(Error::AtomOutsideAlphabet(a));
        }
        Ok(())
    }

    /// Evaluation without input checks; `f` must have passed [`Alphabet::check`].
    pub(crate) fn eval(&self, w_l: WorldSet, w_n: WorldSet, w: World, f: &Formula) -> bool {
        let all = |set: WorldSet, body: &Formula| {
            self.worlds().filter(|v| set & (1 << v) != 0).all(|v| self.eval(w_l, w_n, v, body))
        };
        match f {
            Formula::Atom(a) => w & (1 << self.index(a).expect("checked")) != 0,
            Formula::True => true,
            Formula::False => false,
            Formula::Not(a) => !self.eval(w_l, w_n, w, a),
            Formula::And(a, b) => self.eval(w_l, w_n, w, a) && self.eval(w_l, w_n, w, b),
            Formula::Or(a, b) => self.eval(w_l, w_n, w, a) || self.eval(w_l, w_n, w, b),
            Formula::Implies(a, b) => !self.eval(w_l, w_n, w, a) || self.eval(w_l, w_n, w, b),
            Formula::Iff(a, b) => self.eval(w_l, w_n, w, a) == self.eval(w_l, w_n, w, b),
            Formula::L(_, a) => all(w_l, a),
            Formula::N(_, a) => all(w_n, a),
            Formula::Val(_) => unreachable!("checked"),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.atoms.join(","))
    }
}

/// `(W, w)`. `w` need not lie in `W` and `W` may be empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Situation {
    pub known: WorldSet,
    pub actual: World,
}

/// `(W_L, W_N, w)` with `W_L ∪ W_N` covering every world.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedSituation {
    pub w_l: WorldSet,
    pub w_n: WorldSet,
    pub actual: World,
}

impl Situation {
    pub fn extend(self, alphabet: &Alphabet) -> ExtendedSituation {
        ExtendedSituation { w_l: self.known, w_n: !self.known & alphabet.all_worlds(), actual: self.actual }
    }
}

impl ExtendedSituation {
    pub fn show(&self, alphabet: &Alphabet) -> String {
        format!(
            "W_L={} W_N={} w={}",
            alphabet.show_set(self.w_l),
            alphabet.show_set(self.w_n),
            alphabet.show_world(self.actual)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// `N` ranges over the complement of `W`.
    LevesqueComplementary,
    /// `L` over `W_L`, `N` over `W_N`, overlap allowed.
    Extended,
}

/// Levesque's satisfaction relation.
pub fn eval(alphabet: &Alphabet, s: Situation, f: &Formula) -> Result<bool> {
    alphabet.check(f)?;
    let x = s.extend(alphabet);
    Ok(alphabet.eval(x.w_l, x.w_n, x.actual, f))
}

/// The extended satisfaction relation.
pub fn eval_x(alphabet: &Alphabet, s: ExtendedSituation, f: &Formula) -> Result<bool> {
    alphabet.check(f)?;
    let all = alphabet.all_worlds();
    if (s.w_l | s.w_n) & all != all {
        return Err(Error::CoverageViolated);
    }
    Ok(alphabet.eval(s.w_l, s.w_n, s.actual, f))
}

/// Number of situations enumerated for `semantics`, if it fits in `u64`.
pub fn situation_count(alphabet: &Alphabet, semantics: Semantics) -> Option<u64> {
    let nw = alphabet.world_count();
    let base: u64 = match semantics {
        Semantics::LevesqueComplementary => 2,
        Semantics::Extended => 3,
    };
    base.checked_pow(nw)?.checked_mul(nw as u64)
}

/// Decodes the `index`-th situation. The real world varies fastest.
/// Extended coverage digits (base 3, one per world): 0 = `W_L` only,
/// 1 = `W_N` only, 2 = both.
pub fn situation_at(alphabet: &Alphabet, semantics: Semantics, index: u64) -> ExtendedSituation {
    let nw = alphabet.world_count() as u64;
    let actual = (index % nw) as World;
    let mut m = index / nw;
    match semantics {
        Semantics::LevesqueComplementary => Situation { known: m, actual }.extend(alphabet),
        Semantics::Extended => {
            let (mut w_l, mut w_n) = (0, 0);
            for w in 0..nw {
                match m % 3 {
                    0 => w_l |= 1 << w,
                    1 => w_n |= 1 << w,
                    _ => {
                        w_l |= 1 << w;
                        w_n |= 1 << w;
                    }
                }
                m /= 3;
            }
            ExtendedSituation { w_l, w_n, actual }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub valid: bool,
    /// The least failing situation in enumeration order.
    pub counterexample: Option<ExtendedSituation>,
    pub situations: u64,
}

/// Brute-force validity of `f` over every situation of `semantics`.
pub fn oracle_valid(
    f: &Formula,
    alphabet: &Alphabet,
    semantics: Semantics,
    bound: usize,
    strategy: Strategy,
) -> Result<OracleVerdict> {
    alphabet.check(f)?;
    if alphabet.len() > bound {
        return Err(Error::BoundExceeded { atoms: alphabet.len(), bound });
    }
    let total = situation_count(alphabet, semantics)
        .ok_or(Error::BoundExceeded { atoms: alphabet.len(), bound: HARD_MAX })?;
    let failing = exec::find_first(total, strategy, |k| {
        let s = situation_at(alphabet, semantics, k);
        !alphabet.eval(s.w_l, s.w_n, s.actual, f)
    });
    Ok(OracleVerdict {
        valid: failing.is_none(),
        counterexample: failing.map(|k| situation_at(alphabet, semantics, k)),
        situations: total,
    })
}

/// `W⁺`: worlds satisfying every objective formula believed at `W`.
///
/// Every objective formula over `Φ` is equivalent to the characteristic
/// formula of some world set, so the quantifier ranges over those.
pub fn maximal_closure(known: WorldSet, alphabet: &Alphabet) -> WorldSet {
    let one = AgentId::new(1).expect("nonzero");
    let objective: Vec<Formula> = (0..=alphabet.all_worlds()).map(|s| alphabet.set_formula(s)).collect();
    let unknown = !known & alphabet.all_worlds();
    let believed: Vec<&Formula> = objective
        .iter()
        .filter(|phi| alphabet.eval(known, unknown, 0, &Formula::l(one, (*phi).clone())))
        .collect();
    let plus = alphabet
        .worlds()
        .filter(|&w| believed.iter().all(|phi| alphabet.eval(known, unknown, w, phi)))
        .fold(0, |s, w| s | (1 << w));
    debug_assert_eq!(plus, known, "W+ = W over a finite alphabet");
    plus
}

/// Rewrites `f` into an `N`-free formula equivalent under the complementary
/// semantics over `Φ`, replacing each `N χ` by `⋀_{w ⊨ ¬χ} ¬L ¬w`.
pub fn reduce_n_to_l(f: &Formula, alphabet: &Alphabet) -> Result<Formula> {
    alphabet.check(f)?;
    let flat = normalize(f)?;
    Ok(simplify::simplify(&replace_n(&flat, alphabet)))
}

fn replace_n(f: &Formula, alphabet: &Alphabet) -> Formula {
    let rec = |g: &Formula| Box::new(replace_n(g, alphabet));
    match f {
        Formula::N(agent, chi) => {
            // χ is propositional after flattening, so the world sets are irrelevant.
            let mut clauses = alphabet
                .worlds()
                .filter(|&w| !alphabet.eval(0, 0, w, chi))
                .map(|w| simplify::not(Formula::l(*agent, simplify::not(alphabet.world_formula(w)))))
                .peekable();
            if clauses.peek().is_none() {
                Formula::True
            } else {
                Formula::conj(clauses)
            }
        }
        Formula::Not(a) => Formula::Not(rec(a)),
        Formula::And(a, b) => Formula::And(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
        Formula::Iff(a, b) => Formula::Iff(rec(a), rec(b)),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(text: &str) -> Formula {
        parse(text, 1).unwrap()
    }

    fn phi(list: &str) -> Alphabet {
        Alphabet::parse(list).unwrap()
    }

    #[test]
    fn eval_examples() {
        let a = phi("p");
        let wp = a.world_of(&["p"]).unwrap();
        let wnp = a.world_of(&[]).unwrap();
        let s = Situation { known: a.set_of([wp]), actual: wp };
        assert!(eval(&a, s, &f("O1 p")).unwrap());
        assert!(!eval(&a, s, &f("O1 true")).unwrap());
        assert!(eval(&a, Situation { known: 0, actual: wnp }, &f("L1 false")).unwrap());
        let full = Situation { known: a.all_worlds(), actual: wp };
        assert!(eval(&a, full, &f("N1 false & N1 (p & ~p)")).unwrap());
    }

    #[test]
    fn eval_x_examples() {
        let a = phi("p");
        let wp = a.world_of(&["p"]).unwrap();
        let s = ExtendedSituation { w_l: a.all_worlds(), w_n: a.set_of([wp]), actual: wp };
        assert!(!eval_x(&a, s, &f("~L1 ~p -> N1 ~p")).unwrap());
        let both = ExtendedSituation { w_l: a.all_worlds(), w_n: a.all_worlds(), actual: 0 };
        for body in ["p", "~p", "true", "false"] {
            let l = eval_x(&a, both, &f(&format!("L1 {body}"))).unwrap();
            assert_eq!(l, eval_x(&a, both, &f(&format!("N1 {body}"))).unwrap());
        }
        let gap = ExtendedSituation { w_l: a.set_of([wp]), w_n: 0, actual: wp };
        assert!(matches!(eval_x(&a, gap, &f("p")), Err(Error::CoverageViolated)));
    }

    #[test]
    fn input_checks() {
        let a = phi("p");
        let s = Situation { known: 0, actual: 0 };
        assert!(matches!(eval(&a, s, &parse("L2 p", 2).unwrap()), Err(Error::NotSingleAgent(_))));
        assert!(matches!(eval(&a, s, &f("V p")), Err(Error::ValNotAllowed(_))));
        assert!(matches!(eval(&a, s, &f("q")), Err(Error::AtomOutsideAlphabet(q)) if q == "q"));
        assert!(matches!(
            oracle_valid(&f("p | ~p"), &phi("p,q,r"), Semantics::Extended, DEFAULT_BOUND, Strategy::Sequential),
            Err(Error::BoundExceeded { atoms: 3, bound: 2 })
        ));
        assert!(Alphabet::parse("a,b,c,d,e,f").is_err());
    }

    #[test]
    fn finite_phi_phenomenon() {
        let a = phi("p");
        let g = f("~L1 ~p -> N1 ~p");
        let lev = oracle_valid(&g, &a, Semantics::LevesqueComplementary, 2, Strategy::Sequential).unwrap();
        assert!(lev.valid);
        let ext = oracle_valid(&g, &a, Semantics::Extended, 2, Strategy::Sequential).unwrap();
        assert!(!ext.valid);
        let cx = ext.counterexample.unwrap();
        assert!(!eval_x(&a, cx, &g).unwrap());
        assert_eq!(cx.w_n & a.set_of([a.world_of(&["p"]).unwrap()]), cx.w_n & a.all_worlds());
    }

    #[test]
    fn strategies_agree_on_counterexample() {
        let a = phi("p,q");
        for text in ["~L1 ~p -> N1 ~p", "L1 p -> N1 p", "N1 q | L1 ~q"] {
            let g = f(text);
            let s = oracle_valid(&g, &a, Semantics::Extended, 2, Strategy::Sequential).unwrap();
            let p = oracle_valid(&g, &a, Semantics::Extended, 2, Strategy::Parallel).unwrap();
            assert_eq!(s, p, "{text}");
        }
    }

    #[test]
    fn maximal_closure_is_identity() {
        let a = phi("p");
        let wp = a.world_of(&["p"]).unwrap();
        assert_eq!(maximal_closure(a.set_of([wp]), &a), a.set_of([wp]));
        assert_eq!(maximal_closure(0, &a), 0);
        assert_eq!(maximal_closure(a.all_worlds(), &a), a.all_worlds());
        let b = phi("p,q");
        for w in 0..=b.all_worlds() {
            assert_eq!(maximal_closure(w, &b), w);
        }
    }

    #[test]
    fn reduction_examples() {
        let a = phi("p");
        assert_eq!(reduce_n_to_l(&f("N1 p"), &a).unwrap(), f("~L1 p"));
        assert_eq!(reduce_n_to_l(&f("N1 true"), &a).unwrap(), Formula::True);
        assert_eq!(reduce_n_to_l(&f("N1 false"), &a).unwrap(), f("~L1 p & ~L1 ~p"));
    }

    #[test]
    fn reduction_is_equivalent() {
        let a = phi("p");
        for text in ["O1 p", "N1 (p | L1 p)", "L1 N1 p", "N1 ~N1 p -> L1 p", "O1 (~L1 ~p -> p)"] {
            let g = f(text);
            let r = reduce_n_to_l(&g, &a).unwrap();
            assert!(!r.mentions_n(), "{text}");
            for known in 0..=a.all_worlds() {
                for actual in a.worlds() {
                    let s = Situation { known, actual };
                    assert_eq!(eval(&a, s, &g).unwrap(), eval(&a, s, &r).unwrap(), "{text} at {s:?}");
                }
            }
        }
    }
}
