use proptest::prelude::*;

use onlyknow_core::autoepistemic::{believes, only_knowing_sets, Answer, BeliefQuery};
use onlyknow_core::corpus::{in_profile, GenConfig, Generator, Profile};
use onlyknow_core::finite::{eval, oracle_valid, Alphabet, Semantics, Situation};
use onlyknow_core::formula::{build_independent, classify, depth, parse_unbounded};
use onlyknow_core::k45;
use onlyknow_core::normal_form::{reassemble, to_normal_form};
use onlyknow_core::{parse, AgentId, Decider, Enumeration, Formula, Strategy};

fn one() -> AgentId {
    AgentId::new(1).unwrap()
}

fn full(seed: u64) -> Formula {
    Generator::new(seed, Profile::Full, GenConfig { depth: 2, atoms: 3, agents: 2, size: 9, val: true }).formula()
}

fn val_free(seed: u64) -> Formula {
    Generator::new(seed, Profile::Full, GenConfig { depth: 3, atoms: 3, agents: 2, size: 10, val: false }).formula()
}

fn basic(seed: u64) -> Formula {
    Generator::new(seed, Profile::Basic, GenConfig { depth: 3, atoms: 3, agents: 2, size: 12, val: false }).formula()
}

fn single(seed: u64, atoms: usize) -> Formula {
    Generator::new(seed, Profile::OnlMinus, GenConfig { depth: 2, atoms, agents: 1, size: 10, val: false }).formula()
}

fn valid(f: &Formula) -> bool {
    Decider::new().valid(f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let f = full(seed);
        prop_assert_eq!(parse(&f.to_string(), 2).unwrap(), f.clone());
        prop_assert_eq!(parse_unbounded(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn classification_is_stable_under_printing(seed in any::<u64>()) {
        let f = full(seed);
        let g = parse(&f.to_string(), 2).unwrap();
        for i in 1..=2 {
            let agent = AgentId::new(i).unwrap();
            prop_assert_eq!(classify(&f, agent), classify(&g, agent));
        }
    }

    #[test]
    fn generator_respects_profiles(seed in any::<u64>()) {
        prop_assert!(in_profile(&basic(seed), Profile::Basic));
        prop_assert!(in_profile(&single(seed, 2), Profile::OnlMinus));
    }

    #[test]
    fn validity_is_dual_to_consistency(seed in any::<u64>()) {
        let f = full(seed);
        let mut d = Decider::new();
        prop_assert_eq!(d.valid(&f).unwrap(), !d.consistent(&Formula::not(f.clone())).unwrap());
        prop_assert!(d.consistent(&f).unwrap() || !d.consistent(&Formula::and(f.clone(), Formula::atom("p"))).unwrap());
    }

    #[test]
    fn memo_does_not_change_verdicts(seed in any::<u64>()) {
        let f = full(seed);
        prop_assert_eq!(Decider::new().consistent(&f).unwrap(), Decider::new().with_memo().consistent(&f).unwrap());
    }

    #[test]
    fn enumerations_agree(seed in any::<u64>()) {
        let f = val_free(seed);
        let split = Decider::new().consistent(&f).unwrap();
        let dnf = Decider::new().with_enumeration(Enumeration::Dnf).consistent(&f).unwrap();
        prop_assert_eq!(split, dnf);
    }

    #[test]
    fn necessitation(seed in any::<u64>()) {
        let f = full(seed);
        let phi = Formula::or(f.clone(), Formula::not(f));
        prop_assert!(valid(&phi));
        for i in 1..=2 {
            let agent = AgentId::new(i).unwrap();
            prop_assert!(valid(&Formula::l(agent, phi.clone())));
            prop_assert!(valid(&Formula::n(agent, phi.clone())));
            prop_assert!(valid(&Formula::val(phi.clone())));
        }
    }

    #[test]
    fn complementary_situations_embed_into_extended_ones(seed in any::<u64>()) {
        let f = single(seed, 2);
        let pq = Alphabet::parse("p,q").unwrap();
        let x = oracle_valid(&f, &pq, Semantics::Extended, 2, Strategy::Sequential).unwrap().valid;
        let c = oracle_valid(&f, &pq, Semantics::LevesqueComplementary, 2, Strategy::Sequential).unwrap().valid;
        prop_assert!(!x || c);
    }

    #[test]
    fn normal_form_is_equivalent(seed in any::<u64>()) {
        let f = val_free(seed);
        let nf = reassemble(to_normal_form(&f).unwrap());
        prop_assert!(valid(&Formula::iff(f, nf)));
    }

    #[test]
    fn single_agent_normal_form_agrees_everywhere(seed in any::<u64>()) {
        let f = single(seed, 2);
        let nf = reassemble(to_normal_form(&f).unwrap());
        let pq = Alphabet::parse("p,q").unwrap();
        let v = oracle_valid(&Formula::iff(f, nf), &pq, Semantics::Extended, 2, Strategy::Sequential).unwrap();
        prop_assert!(v.valid, "{:?}", v.counterexample.map(|s| s.show(&pq)));
    }

    #[test]
    fn tableau_witnesses_are_k45_models(seed in any::<u64>()) {
        let f = basic(seed);
        match k45::sat_with_witness(&f, 2).unwrap() {
            Some(m) => {
                prop_assert!(m.validate().is_k45());
                prop_assert!(m.check_basic(m.world("w0").unwrap(), &f).unwrap());
            }
            None => prop_assert!(!Decider::new().consistent(&f).unwrap()),
        }
    }

    #[test]
    fn beliefs_match_only_knowing_sets(seed in any::<u64>(), q in 0usize..4) {
        let p = Alphabet::parse("p").unwrap();
        let kb = single(seed, 1);
        let query = parse(["p", "~p", "true", "false"][q], 1).unwrap();
        let sets = only_knowing_sets(&kb, &p, 1, Strategy::Sequential).unwrap();
        let every_state_believes = sets.iter().all(|&known| {
            p.worlds().filter(|w| known >> w & 1 == 1).all(|w| eval(&p, Situation { known, actual: w }, &query).unwrap())
        });
        let answer = believes(&BeliefQuery::new(one(), kb, query));
        prop_assert_eq!(answer == Answer::Yes, every_state_believes);
    }
}

/// `¬L_j ¬¬L_i ¬ … true`: a j-i-j-… chain of `2 * rounds` successors
/// exists.
fn chain(rounds: usize) -> Formula {
    let (i, j) = (one(), AgentId::new(2).unwrap());
    (0..rounds).fold(Formula::True, |f, _| {
        let m_i = Formula::not(Formula::l(i, Formula::not(f)));
        Formula::not(Formula::l(j, Formula::not(m_i)))
    })
}

/// Without seriality, `φ` decides `(L_j L_i)^(K+1) p` exactly when it rules
/// out a successor chain of that length, e.g. `φ = L_j false`.
#[test]
fn independent_formula_is_deep_and_undecided() {
    for bound in 0..=2 {
        let g = build_independent(one(), 2, bound, "p").unwrap();
        assert_eq!(depth(&g).unwrap(), 2 * (bound + 1));
        assert!(classify(&g, one()).i_objective);
        let cfg = GenConfig { depth: bound, atoms: 2, agents: 2, size: 8, val: false };
        let mut gen = Generator::new(bound as u64, Profile::Basic, cfg);
        let (mut tried, mut chainless) = (0, 0);
        while tried < 60 {
            let f = gen.objective(one());
            if depth(&f).unwrap() > bound || !k45::sat(&f, 2).unwrap() {
                continue;
            }
            tried += 1;
            assert!(k45::sat(&Formula::and(f.clone(), g.clone()), 2).unwrap(), "{f} refutes {g}");
            let has_chain = k45::sat(&Formula::and(f.clone(), chain(bound + 1)), 2).unwrap();
            assert_eq!(k45::independent(&f, &g).unwrap(), has_chain, "{f} vs {g}");
            chainless += usize::from(!has_chain);
        }
        assert!(chainless < tried);
    }
    let q = parse("q", 2).unwrap();
    assert!(k45::independent(&q, &build_independent(one(), 2, 0, "p").unwrap()).unwrap());
    let blind = parse("L2 false", 2).unwrap();
    assert!(!k45::independent(&blind, &build_independent(one(), 2, 1, "p").unwrap()).unwrap());
}
