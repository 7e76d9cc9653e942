//! Seeded formula generation, axiom instances, corpus files and the
//! decision-vs-oracle cross-check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decision::{Decider, Status};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::finite::{self, Alphabet, Semantics};
use crate::formula::{classify, is_i_objective, is_i_subjective, is_propositional, parse, AgentId, Formula};
use crate::k45;
use crate::prop::prop_sat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// No `N`, no `Val`.
    Basic,
    /// No `Val`, and no `N_j` inside a modality of another agent.
    OnlMinus,
    /// Every operator, `Val` included unless disabled in [`GenConfig`].
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// Maximum modal depth (`Val` counts as a level).
    pub depth: usize,
    /// Atoms are drawn from the first `atoms` of `p, q, r, s, t`.
    pub atoms: usize,
    pub agents: u32,
    /// Rough node budget per formula.
    pub size: usize,
    pub val: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { depth: 3, atoms: 3, agents: 2, size: 7, val: true }
    }
}

const ATOMS: [&str; 5] = ["p", "q", "r", "s", "t"];

/// Which `N_j` may appear at the current position.
#[derive(Clone, Copy)]
enum Scope {
    Any,
    Only(AgentId),
    None,
}

impl Scope {
    fn enter(self, agent: AgentId) -> Scope {
        match self {
            Scope::Any => Scope::Only(agent),
            Scope::Only(i) if i == agent => self,
            _ => Scope::None,
        }
    }

    fn allows(self, agent: AgentId) -> bool {
        match self {
            Scope::Any => true,
            Scope::Only(i) => i == agent,
            Scope::None => false,
        }
    }
}

/// Reproducible stream of random formulas.
pub struct Generator {
    rng: ChaCha8Rng,
    profile: Profile,
    config: GenConfig,
}

impl Generator {
    pub fn new(seed: u64, profile: Profile, config: GenConfig) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), profile, config }
    }

    pub fn formula(&mut self) -> Formula {
        self.gen(self.config.size, self.config.depth, Scope::Any)
    }

    pub fn agent(&mut self) -> AgentId {
        AgentId::new(self.rng.gen_range(1..=self.config.agents.max(1))).expect("nonzero")
    }

    fn atom(&mut self) -> Formula {
        let n = self.config.atoms.clamp(1, ATOMS.len());
        Formula::atom(ATOMS[self.rng.gen_range(0..n)])
    }

    fn leaf(&mut self) -> Formula {
        match self.rng.gen_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => self.atom(),
        }
    }

    fn split(&mut self, size: usize) -> (usize, usize) {
        let left = self.rng.gen_range(1..size.max(2));
        (left, size.saturating_sub(left + 1).max(1))
    }

    fn uses_n(&self) -> bool {
        self.profile != Profile::Basic
    }

    fn uses_val(&self) -> bool {
        self.profile == Profile::Full && self.config.val
    }

    fn gen(&mut self, size: usize, depth: usize, scope: Scope) -> Formula {
        if size <= 1 || self.rng.gen_range(0..16) == 0 {
            return self.leaf();
        }
        let modal = depth > 0;
        match self.rng.gen_range(0..13) {
            0 | 1 => Formula::not(self.gen(size - 1, depth, scope)),
            2..=4 => self.binary(size, depth, scope, |g, s, d, sc| g.gen(s, d, sc)),
            _ if !modal => self.binary(size, depth, scope, |g, s, d, sc| g.gen(s, d, sc)),
            5..=8 => {
                let i = self.agent();
                Formula::l(i, self.gen(size - 1, depth - 1, scope.enter(i)))
            }
            9 | 10 if self.uses_n() => {
                let i = self.agent();
                if self.profile == Profile::OnlMinus && !scope.allows(i) {
                    return Formula::l(i, self.gen(size - 1, depth - 1, scope.enter(i)));
                }
                let body = self.gen(size - 1, depth - 1, scope.enter(i));
                if self.rng.gen_bool(0.3) {
                    Formula::o(i, body)
                } else {
                    Formula::n(i, body)
                }
            }
            11 if self.uses_val() => Formula::val(self.gen(size - 1, depth - 1, Scope::Any)),
            _ => self.binary(size, depth, scope, |g, s, d, sc| g.gen(s, d, sc)),
        }
    }

    fn binary(
        &mut self,
        size: usize,
        depth: usize,
        scope: Scope,
        mut sub: impl FnMut(&mut Self, usize, usize, Scope) -> Formula,
    ) -> Formula {
        let (l, r) = self.split(size - 1);
        let a = sub(self, l, depth, scope);
        let b = sub(self, r, depth, scope);
        match self.rng.gen_range(0..7) {
            0..=2 => Formula::and(a, b),
            3..=4 => Formula::or(a, b),
            5 => Formula::implies(a, b),
            _ => Formula::iff(a, b),
        }
    }

    /// A Boolean combination of `leaf` results.
    fn boolean_over(&mut self, size: usize, leaf: &mut dyn FnMut(&mut Self) -> Formula) -> Formula {
        if size <= 1 || self.rng.gen_range(0..4) == 0 {
            return leaf(self);
        }
        match self.rng.gen_range(0..5) {
            0 => Formula::not(self.boolean_over(size - 1, leaf)),
            1 | 2 => {
                let (l, r) = self.split(size - 1);
                Formula::and(self.boolean_over(l, leaf), self.boolean_over(r, leaf))
            }
            3 => {
                let (l, r) = self.split(size - 1);
                Formula::or(self.boolean_over(l, leaf), self.boolean_over(r, leaf))
            }
            _ => {
                let (l, r) = self.split(size - 1);
                Formula::implies(self.boolean_over(l, leaf), self.boolean_over(r, leaf))
            }
        }
    }

    pub fn propositional(&mut self) -> Formula {
        let size = self.config.size.min(5);
        self.boolean_over(size, &mut |g| g.leaf())
    }

    /// An `agent`-objective formula: atoms and other agents' modalities.
    pub fn objective(&mut self, agent: AgentId) -> Formula {
        let size = self.config.size.min(5);
        let depth = self.config.depth.saturating_sub(1);
        let others: Vec<AgentId> =
            (1..=self.config.agents).filter(|&j| j != agent.index()).map(|j| AgentId::new(j).expect("nonzero")).collect();
        self.boolean_over(size, &mut |g| {
            if others.is_empty() || depth == 0 || g.rng.gen_bool(0.6) {
                return g.leaf();
            }
            let j = others[g.rng.gen_range(0..others.len())];
            let body = g.gen(3, depth, Scope::Only(j));
            if g.uses_n() && g.rng.gen_bool(0.3) {
                Formula::n(j, body)
            } else {
                Formula::l(j, body)
            }
        })
    }

    /// An `agent`-subjective formula: Boolean combination of `L_i` / `N_i`.
    pub fn subjective(&mut self, agent: AgentId) -> Formula {
        let size = self.config.size.min(5);
        let depth = self.config.depth.saturating_sub(1);
        self.boolean_over(size, &mut |g| {
            let body = g.gen(3, depth, Scope::Only(agent));
            if g.uses_n() && g.rng.gen_bool(0.4) {
                Formula::n(agent, body)
            } else {
                Formula::l(agent, body)
            }
        })
    }

    fn any(&mut self) -> Formula {
        let size = self.config.size.min(5);
        let depth = self.config.depth.saturating_sub(1);
        self.gen(size, depth, Scope::Any)
    }
}

impl Iterator for Generator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        Some(self.formula())
    }
}

pub fn generate_random(seed: u64, profile: Profile, config: GenConfig) -> Formula {
    Generator::new(seed, profile, config).formula()
}

/// One instance of an axiom schema, tagged with the schema name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomInstance {
    pub schema: &'static str,
    pub formula: Formula,
}

/// Propositional tautologies over placeholders `a`, `b`, `c`.
const TAUTOLOGIES: [&str; 6] = [
    "a -> b -> a",
    "(a -> b -> c) -> (a -> b) -> a -> c",
    "(~a -> ~b) -> b -> a",
    "a | ~a",
    "a & b -> b & a",
    "(a <-> b) -> (~a <-> ~b)",
];

fn substitute(f: &Formula, map: &[(&str, &Formula)]) -> Formula {
    match f {
        Formula::Atom(a) => map.iter().find(|(k, _)| k == a).map(|(_, v)| (*v).clone()).unwrap_or_else(|| f.clone()),
        Formula::True | Formula::False => f.clone(),
        Formula::Not(a) => Formula::not(substitute(a, map)),
        Formula::And(a, b) => Formula::and(substitute(a, map), substitute(b, map)),
        Formula::Or(a, b) => Formula::or(substitute(a, map), substitute(b, map)),
        Formula::Implies(a, b) => Formula::implies(substitute(a, map), substitute(b, map)),
        Formula::Iff(a, b) => Formula::iff(substitute(a, map), substitute(b, map)),
        Formula::L(i, a) => Formula::l(*i, substitute(a, map)),
        Formula::N(i, a) => Formula::n(*i, substitute(a, map)),
        Formula::Val(a) => Formula::val(substitute(a, map)),
    }
}

fn tautology_instance(g: &mut Generator) -> Formula {
    let template = parse(TAUTOLOGIES[g.rng.gen_range(0..TAUTOLOGIES.len())], 1).expect("template parses");
    debug_assert!(!prop_sat(&Formula::not(template.clone())).expect("propositional"));
    let (a, b, c) = (g.any(), g.any(), g.any());
    substitute(&template, &[("a", &a), ("b", &b), ("c", &c)])
}

/// Names of the schemas produced by [`axiom_instances`].
pub const AX_SCHEMAS: [&str; 9] = ["A1", "A2", "A3", "A4", "A5'", "V1", "V2", "V3", "V4"];

/// `per_schema` instances of each schema in [`AX_SCHEMAS`], side conditions
/// checked as they are built.
pub fn axiom_instances(seed: u64, per_schema: usize, config: GenConfig) -> Vec<AxiomInstance> {
    let mut g = Generator::new(seed, Profile::Full, config);
    let mut out = Vec::new();
    for schema in AX_SCHEMAS {
        let mut made = 0;
        while made < per_schema {
            if let Some(formula) = instance(&mut g, schema) {
                out.push(AxiomInstance { schema, formula });
                made += 1;
            }
        }
    }
    out
}

fn objectives(g: &mut Generator, agent: AgentId, count: usize) -> Vec<Formula> {
    (0..count).map(|_| g.objective(agent)).collect()
}

fn instance(g: &mut Generator, schema: &str) -> Option<Formula> {
    let i = g.agent();
    let f = match schema {
        "A1" => tautology_instance(g),
        "A2" | "A3" => {
            let (a, b) = (g.any(), g.any());
            let m = |x: Formula| if schema == "A2" { Formula::l(i, x) } else { Formula::n(i, x) };
            Formula::implies(m(Formula::implies(a.clone(), b.clone())), Formula::implies(m(a), m(b)))
        }
        "A4" => {
            let sigma = g.subjective(i);
            if !is_i_subjective(&sigma, i) {
                return None;
            }
            Formula::implies(sigma.clone(), Formula::and(Formula::l(i, sigma.clone()), Formula::n(i, sigma)))
        }
        "A5'" => {
            let alpha = g.objective(i);
            if !is_i_objective(&alpha, i) {
                return None;
            }
            Formula::implies(
                Formula::con(Formula::not(alpha.clone())),
                Formula::implies(Formula::n(i, alpha.clone()), Formula::not(Formula::l(i, alpha))),
            )
        }
        "V1" => {
            let (a, b) = (g.any(), g.any());
            Formula::implies(
                Formula::and(Formula::val(a.clone()), Formula::val(Formula::implies(a, b.clone()))),
                Formula::val(b),
            )
        }
        "V2" => {
            let phi = g.propositional();
            if !is_propositional(&phi) || !prop_sat(&phi).expect("propositional") {
                return None;
            }
            Formula::con(phi)
        }
        "V3" => {
            let alpha = g.objective(i);
            let gamma = g.objective(i);
            let k = g.rng.gen_range(0..=2);
            let m = g.rng.gen_range(0..=2);
            let betas = objectives(g, i, k);
            let deltas = objectives(g, i, m);
            let all_objective = [&alpha, &gamma].into_iter().chain(&betas).chain(&deltas).all(|x| is_i_objective(x, i));
            if !all_objective {
                return None;
            }
            let premise = Formula::conj(
                betas
                    .iter()
                    .map(|b| Formula::con(Formula::and(alpha.clone(), b.clone())))
                    .chain(deltas.iter().map(|d| Formula::con(Formula::and(gamma.clone(), d.clone()))))
                    .chain([Formula::val(Formula::or(alpha.clone(), gamma.clone()))]),
            );
            let state = Formula::conj(
                [Formula::l(i, alpha.clone())]
                    .into_iter()
                    .chain(betas.iter().map(|b| Formula::not(Formula::l(i, Formula::not(b.clone())))))
                    .chain([Formula::n(i, gamma.clone())])
                    .chain(deltas.iter().map(|d| Formula::not(Formula::n(i, Formula::not(d.clone()))))),
            );
            Formula::implies(premise, Formula::con(state))
        }
        "V4" => {
            let alpha = g.objective(i);
            let beta = g.subjective(i);
            if !is_i_objective(&alpha, i) || !is_i_subjective(&beta, i) {
                return None;
            }
            Formula::implies(
                Formula::and(Formula::con(alpha.clone()), Formula::con(beta.clone())),
                Formula::con(Formula::and(alpha, beta)),
            )
        }
        other => panic!("unknown schema {other}"),
    };
    Some(f)
}

/// Single-agent schemas for the finite semantics.
pub const LEVESQUE_SCHEMAS: [&str; 5] = ["A1", "A2", "A3", "A4", "A5"];

/// Instances of Levesque's single-agent axioms over the given atoms.
pub fn levesque_instances(seed: u64, per_schema: usize, atoms: usize) -> Vec<AxiomInstance> {
    let config = GenConfig { depth: 2, atoms, agents: 1, size: 5, val: false };
    let mut g = Generator::new(seed, Profile::OnlMinus, config);
    let one = AgentId::new(1).expect("nonzero");
    let mut out = Vec::new();
    for schema in LEVESQUE_SCHEMAS {
        let mut made = 0;
        while made < per_schema {
            let f = match schema {
                "A5" => {
                    let alpha = g.propositional();
                    if !prop_sat(&Formula::not(alpha.clone())).expect("propositional") {
                        continue;
                    }
                    Formula::implies(Formula::n(one, alpha.clone()), Formula::not(Formula::l(one, alpha)))
                }
                s => instance(&mut g, s).expect("single-agent side conditions are constructive"),
            };
            out.push(AxiomInstance { schema, formula: f });
            made += 1;
        }
    }
    out
}

/// `N α ↔ ⋀_{w ⊨ ¬α} ¬L ¬w` for objective `α` with satisfiable `¬α`.
pub fn a5_phi_instance(alpha: &Formula, alphabet: &Alphabet) -> Option<Formula> {
    if !is_propositional(alpha) || !prop_sat(&Formula::not(alpha.clone())).ok()? {
        return None;
    }
    let one = AgentId::new(1).expect("nonzero");
    let worlds = alphabet.worlds().filter(|&w| {
        let s = finite::Situation { known: 0, actual: w };
        !finite::eval(alphabet, s, alpha).unwrap_or(true)
    });
    let rhs = Formula::conj(worlds.map(|w| Formula::not(Formula::l(one, Formula::not(alphabet.world_formula(w))))));
    Some(Formula::iff(Formula::n(one, alpha.clone()), rhs))
}

/// Which procedure a corpus entry is checked with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemanticsTag {
    /// The decision procedure.
    Ax,
    /// The K45 tableau (basic formulas only).
    K45,
    /// Finite oracle, complementary semantics.
    Levesque,
    /// Finite oracle, extended semantics.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub formula: String,
    pub expected: Status,
    pub semantics: SemanticsTag,
    /// Where the expected verdict comes from.
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agents: Option<u32>,
    /// Alphabet for the finite oracles, e.g. `p,q`; defaults to the atoms of
    /// the formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

impl CorpusEntry {
    pub fn parse_formula(&self) -> Result<Formula> {
        let f = crate::formula::parse_unbounded(&self.formula)?;
        let agents = self.agents.unwrap_or_else(|| f.max_agent().max(1));
        Ok(parse(&self.formula, agents)?)
    }

    /// Runs the entry with the procedure named by its tag.
    pub fn run(&self, decider: &mut Decider) -> Result<Status> {
        let f = self.parse_formula()?;
        let wants_validity = matches!(self.expected, Status::Valid | Status::Invalid);
        let target = if wants_validity { f.clone() } else { Formula::not(f.clone()) };
        // Every procedure is asked "is `target` valid?"; satisfiability of f
        // is the failure of validity of ¬f.
        let valid = match self.semantics {
            SemanticsTag::Ax => decider.valid(&target)?,
            SemanticsTag::K45 => {
                let agents = self.agents.unwrap_or_else(|| f.max_agent().max(1));
                !k45::sat(&Formula::not(target), agents)?
            }
            SemanticsTag::Levesque | SemanticsTag::Extended => {
                let alphabet = match &self.phi {
                    Some(list) => Alphabet::parse(list)?,
                    None => Alphabet::new(f.atoms())?,
                };
                let sem = if self.semantics == SemanticsTag::Levesque {
                    Semantics::LevesqueComplementary
                } else {
                    Semantics::Extended
                };
                finite::oracle_valid(&target, &alphabet, sem, finite::HARD_MAX, Strategy::Sequential)?.valid
            }
        };
        Ok(match (wants_validity, valid) {
            (true, true) => Status::Valid,
            (true, false) => Status::Invalid,
            (false, true) => Status::Unsatisfiable,
            (false, false) => Status::Satisfiable,
        })
    }
}

/// Parses a json-lines corpus; blank lines and lines starting with `#` are
/// skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(n, l)| serde_json::from_str(l).map_err(|e| Error::Corpus { line: n + 1, message: e.to_string() }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub suite: &'static str,
    pub formula: String,
    pub decision: bool,
    pub oracle: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub basic_checked: usize,
    pub single_agent_checked: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Basic formulas: `consistent_ax ⇔ k45::sat`, for each formula and its
/// negation.
pub fn cross_check_basic(formulas: &[Formula], agents: u32, strategy: Strategy) -> Vec<Disagreement> {
    exec::map(formulas, strategy, |f| {
        [f.clone(), Formula::not(f.clone())]
            .into_iter()
            .filter_map(|g| {
                let decision = Decider::new().consistent(&g).expect("no deadline");
                let oracle = k45::sat(&g, agents).expect("basic input");
                (decision != oracle).then(|| Disagreement { suite: "basic", formula: g.to_string(), decision, oracle })
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Single-agent Val-free formulas: `valid_ax ⇔` valid under the extended
/// semantics over `alphabet`.
pub fn cross_check_single_agent(formulas: &[Formula], alphabet: &Alphabet, strategy: Strategy) -> Vec<Disagreement> {
    exec::map(formulas, strategy, |f| {
        let decision = Decider::new().valid(f).expect("no deadline");
        let oracle = finite::oracle_valid(f, alphabet, Semantics::Extended, alphabet.len(), Strategy::Sequential)
            .expect("single-agent input")
            .valid;
        (decision != oracle).then(|| Disagreement { suite: "single_agent", formula: f.to_string(), decision, oracle })
    })
    .into_iter()
    .flatten()
    .collect()
}

/// `sample` random formulas for each suite, drawn from `seed`.
pub fn cross_check(sample: usize, seed: u64, strategy: Strategy) -> CrossCheckReport {
    let basic_cfg = GenConfig { depth: 3, atoms: 3, agents: 2, size: 14, val: false };
    let basic: Vec<Formula> = Generator::new(seed, Profile::Basic, basic_cfg).take(sample).collect();
    let single_cfg = GenConfig { depth: 2, atoms: 2, agents: 1, size: 12, val: false };
    let single: Vec<Formula> = Generator::new(seed, Profile::OnlMinus, single_cfg).take(sample).collect();
    let alphabet = Alphabet::parse("p,q").expect("two atoms");

    let mut disagreements = cross_check_basic(&basic, 2, strategy);
    disagreements.extend(cross_check_single_agent(&single, &alphabet, strategy));
    CrossCheckReport { basic_checked: basic.len(), single_agent_checked: single.len(), disagreements }
}

/// Classification helper used by the profile tests.
pub fn in_profile(f: &Formula, profile: Profile) -> bool {
    let c = classify(f, AgentId::new(1).expect("nonzero"));
    match profile {
        Profile::Basic => c.basic,
        Profile::OnlMinus => c.in_onl_minus,
        Profile::Full => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::depth;

    #[test]
    fn generation_is_deterministic() {
        for profile in [Profile::Basic, Profile::OnlMinus, Profile::Full] {
            let a: Vec<Formula> = Generator::new(1, profile, GenConfig::default()).take(20).collect();
            let b: Vec<Formula> = Generator::new(1, profile, GenConfig::default()).take(20).collect();
            assert_eq!(a, b);
            assert_eq!(generate_random(1, profile, GenConfig::default()), a[0]);
        }
    }

    #[test]
    fn profiles_are_respected() {
        let cfg = GenConfig::default();
        for profile in [Profile::Basic, Profile::OnlMinus] {
            for f in Generator::new(7, profile, cfg).take(300) {
                assert!(in_profile(&f, profile), "{f}");
                assert!(depth(&f).unwrap() <= cfg.depth, "{f}");
                assert!(f.max_agent() <= cfg.agents);
                assert!(f.atoms().len() <= cfg.atoms);
            }
        }
        assert!(Generator::new(7, Profile::Full, cfg).take(300).any(|f| f.mentions_val()));
        assert!(!Generator::new(7, Profile::Full, GenConfig { val: false, ..cfg }).take(300).any(|f| f.mentions_val()));
    }

    #[test]
    fn instances_have_expected_shape() {
        let all = axiom_instances(3, 4, GenConfig::default());
        assert_eq!(all.len(), 4 * AX_SCHEMAS.len());
        let lev = levesque_instances(3, 4, 2);
        assert!(lev.iter().all(|i| i.formula.max_agent() <= 1 && !i.formula.mentions_val()));
    }

    #[test]
    fn a5_phi_shape() {
        let a = Alphabet::parse("p").unwrap();
        let inst = a5_phi_instance(&Formula::atom("p"), &a).unwrap();
        assert_eq!(inst, parse("N1 p <-> ~L1 ~~p", 1).unwrap());
        assert!(a5_phi_instance(&Formula::True, &a).is_none());
    }

    #[test]
    fn corpus_lines() {
        let text = r#"
# comment
{"formula":"L1 p -> L1 L1 p","expected":"valid","semantics":"ax","provenance":"positive introspection"}
{"formula":"~L1 ~p -> N1 ~p","expected":"invalid","semantics":"extended","phi":"p","provenance":"overlap allowed"}
"#;
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        for e in &entries {
            assert_eq!(e.run(&mut Decider::new()).unwrap(), e.expected, "{}", e.formula);
        }
        assert!(matches!(parse_corpus("{oops"), Err(Error::Corpus { line: 1, .. })));
    }

    #[test]
    fn small_cross_check() {
        let report = cross_check(25, 11, Strategy::Sequential);
        assert_eq!(report.basic_checked, 25);
        assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
    }
}
