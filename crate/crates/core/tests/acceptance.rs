//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use onlyknow_core::autoepistemic::{believes, only_knowing_sets, Answer, BeliefQuery};
use onlyknow_core::corpus::{axiom_instances, levesque_instances, GenConfig, Generator, Profile, AX_SCHEMAS};
use onlyknow_core::finite::{oracle_valid, reduce_n_to_l, Alphabet, Semantics};
use onlyknow_core::kripke::KripkeStructure;
use onlyknow_core::normal_form::{reassemble, to_normal_form};
use onlyknow_core::{consistent_ax, k45, parse, valid_ax, AgentId, Decider, Enumeration, Formula, Status, Strategy};

type Check = fn() -> Result<String, String>;

fn f(text: &str) -> Formula {
    parse(text, 2).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, what: &str, job: impl FnOnce() -> T) -> Result<T, String> {
    let t = Instant::now();
    let out = job();
    ensure(t.elapsed() < limit, || format!("{what} took {:?}, limit {limit:?}", t.elapsed()))?;
    Ok(out)
}

fn theorems() -> Result<String, String> {
    let cases = [
        "O1 (~L1 L2 p -> ~L2 p) -> L1 ~L2 p",
        "O1 (L2 p & (~L1 L2 p -> ~L2 p)) -> L1 L2 p",
        "L2 O1 (~L1 ~p -> p) -> L2 L1 p",
        "N1 L2 p -> ~L1 L2 p",
    ];
    for text in cases {
        let status = timed(Duration::from_secs(1), text, || valid_ax(&f(text)).status)?;
        ensure(status == Status::Valid, || format!("{text}: {status}"))?;
    }
    Ok(format!("{} theorems VALID", cases.len()))
}

fn separation() -> Result<String, String> {
    let five = Duration::from_secs(5);
    let sat = timed(five, "O1 ~O2 p", || consistent_ax(&f("O1 ~O2 p")).status)?;
    ensure(sat == Status::Satisfiable, || format!("O1 ~O2 p: {sat}"))?;
    let unsat = timed(five, "N1 ~O2 p & L1 ~O2 p", || consistent_ax(&f("N1 ~O2 p & L1 ~O2 p")).status)?;
    ensure(unsat == Status::Unsatisfiable, || format!("N1 ~O2 p & L1 ~O2 p: {unsat}"))?;
    Ok("O1 ~O2 p SAT; N1 ~O2 p & L1 ~O2 p UNSAT".into())
}

fn axiom_soundness() -> Result<String, String> {
    let cfg = GenConfig { depth: 2, atoms: 3, agents: 2, size: 6, val: true };
    let instances = axiom_instances(7, 40, cfg);
    ensure(instances.len() >= 300, || format!("only {} instances", instances.len()))?;
    let bad = timed(Duration::from_secs(60), "axiom suite", || {
        instances.iter().filter(|a| valid_ax(&a.formula).status != Status::Valid).cloned().collect::<Vec<_>>()
    })?;
    ensure(bad.is_empty(), || format!("{} not valid, first {} {}", bad.len(), bad[0].schema, bad[0].formula))?;
    Ok(format!("{} instances of {} schemas VALID", instances.len(), AX_SCHEMAS.len()))
}

fn basic_agreement() -> Result<String, String> {
    let cfg = GenConfig { depth: 3, atoms: 3, agents: 2, size: 14, val: false };
    let formulas: Vec<Formula> = Generator::new(2024, Profile::Basic, cfg).take(500).collect();
    // Each formula and its negation, so both verdicts are well represented.
    let checks: Vec<Formula> = formulas.iter().flat_map(|g| [g.clone(), Formula::not(g.clone())]).collect();
    let verdicts = timed(Duration::from_secs(120), "basic agreement", || {
        checks.iter().map(|g| (k45::sat(g, 2).unwrap(), consistent_ax(g).status.holds())).collect::<Vec<_>>()
    })?;
    let bad: Vec<&Formula> = checks.iter().zip(&verdicts).filter(|(_, (t, d))| t != d).map(|(g, _)| g).collect();
    ensure(bad.is_empty(), || format!("{} disagreements, first {}", bad.len(), bad[0]))?;
    let sat = verdicts.iter().filter(|(t, _)| *t).count();
    Ok(format!("{} formulas and negations agree ({sat} SAT, {} UNSAT)", formulas.len(), checks.len() - sat))
}

fn finite_semantics() -> Result<String, String> {
    let t = Instant::now();
    let pq = Alphabet::parse("p,q").unwrap();
    let instances = levesque_instances(5, 40, 2);
    for sem in [Semantics::LevesqueComplementary, Semantics::Extended] {
        for a in &instances {
            let v = oracle_valid(&a.formula, &pq, sem, 2, Strategy::default()).unwrap();
            ensure(v.valid, || format!("{} {} fails under {sem:?}", a.schema, a.formula))?;
        }
    }
    let p = Alphabet::parse("p").unwrap();
    let g = parse("~L1 ~p -> N1 ~p", 1).unwrap();
    let comp = oracle_valid(&g, &p, Semantics::LevesqueComplementary, 1, Strategy::default()).unwrap();
    ensure(comp.valid, || "~L1 ~p -> N1 ~p not valid under complementary semantics".into())?;
    let ext = oracle_valid(&g, &p, Semantics::Extended, 1, Strategy::default()).unwrap();
    let cx = ext.counterexample.ok_or("no counterexample under extended semantics")?;
    ensure(!ext.valid, || "~L1 ~p -> N1 ~p valid under extended semantics".into())?;
    ensure(t.elapsed() < Duration::from_secs(60), || format!("took {:?}", t.elapsed()))?;
    Ok(format!("{} axiom instances valid under both; counterexample {}", instances.len(), cx.show(&p)))
}

fn reduction() -> Result<String, String> {
    let t = Instant::now();
    let p = Alphabet::parse("p").unwrap();
    let cfg = GenConfig { depth: 3, atoms: 1, agents: 1, size: 10, val: false };
    let formulas: Vec<Formula> = Generator::new(6, Profile::OnlMinus, cfg).take(200).collect();
    for g in &formulas {
        let r = reduce_n_to_l(g, &p).unwrap();
        ensure(!r.mentions_n(), || format!("{g} reduced to {r}, which mentions N"))?;
        let v = oracle_valid(&Formula::iff(g.clone(), r.clone()), &p, Semantics::LevesqueComplementary, 1, Strategy::default())
            .unwrap();
        ensure(v.valid, || format!("{g} and {r} differ at {}", v.counterexample.unwrap().show(&p)))?;
    }
    let with_n = formulas.iter().filter(|g| g.mentions_n()).count();
    ensure(t.elapsed() < Duration::from_secs(60), || format!("took {:?}", t.elapsed()))?;
    Ok(format!("{} formulas ({with_n} with N) N-free and equivalent", formulas.len()))
}

fn normal_form() -> Result<String, String> {
    let t = Instant::now();
    let cfg = GenConfig { depth: 3, atoms: 3, agents: 2, size: 12, val: false };
    let formulas: Vec<Formula> = Generator::new(5, Profile::Full, cfg).take(200).collect();
    for g in &formulas {
        let nf = reassemble(to_normal_form(g).unwrap());
        ensure(valid_ax(&Formula::iff(g.clone(), nf)).status == Status::Valid, || format!("{g} differs from its normal form"))?;
    }
    let single_cfg = GenConfig { depth: 2, atoms: 2, agents: 1, size: 12, val: false };
    let single: Vec<Formula> = formulas
        .iter()
        .filter(|g| g.max_agent() <= 1)
        .cloned()
        .chain(Generator::new(5, Profile::OnlMinus, single_cfg).take(200))
        .collect();
    for g in &single {
        let alphabet = Alphabet::new(g.atoms().into_iter().chain(["p".to_string()])).unwrap();
        let nf = reassemble(to_normal_form(g).unwrap());
        let v = oracle_valid(&Formula::iff(g.clone(), nf), &alphabet, Semantics::Extended, 3, Strategy::default()).unwrap();
        ensure(v.valid, || format!("{g} differs from its normal form at {}", v.counterexample.unwrap().show(&alphabet)))?;
    }
    ensure(t.elapsed() < Duration::from_secs(300), || format!("took {:?}", t.elapsed()))?;
    Ok(format!("{} decided equivalent; {} single-agent oracle-equivalent", formulas.len(), single.len()))
}

fn kripke_counterexample() -> Result<String, String> {
    timed(Duration::from_secs(1), "kripke", || {
        let m = KripkeStructure::from_json(r#"{"worlds":{"w":["p"]},"relations":{"1":[["w","w"]]}}"#).unwrap();
        let w = m.world("w").unwrap();
        let g = f("L1 p & N1 p");
        ensure(m.check_naive_n(w, &g).unwrap(), || "naive N: false".into())?;
        ensure(m.check_fixed_n(w, &g).unwrap(), || "fixed N: false".into())?;
        ensure(m.validate().is_k45(), || format!("{:?}", m.validate()))?;
        Ok("L1 p & N1 p TRUE (naive, fixed); model is K45".to_string())
    })?
}

fn default_reasoning() -> Result<String, String> {
    timed(Duration::from_secs(5), "autoepistemic", || {
        let one = AgentId::new(1).unwrap();
        let p = Alphabet::parse("p").unwrap();
        let kb = parse("~L1 ~p -> p", 1).unwrap();
        let sets = only_knowing_sets(&kb, &p, 1, Strategy::default()).unwrap();
        let wp = p.set_of([p.world_of(&["p"]).unwrap()]);
        ensure(sets == vec![wp], || format!("only-knowing sets {sets:?}"))?;
        ensure(believes(&BeliefQuery::new(one, kb, f("p"))) == Answer::Yes, || "default not believed".into())?;
        let weak = f("~L1 L2 p -> ~L2 p");
        ensure(believes(&BeliefQuery::new(one, weak.clone(), f("~L2 p"))) == Answer::Yes, || "weak kb".into())?;
        let strong = Formula::and(f("L2 p"), weak);
        ensure(believes(&BeliefQuery::new(one, strong.clone(), f("L2 p"))) == Answer::Yes, || "strong kb".into())?;
        ensure(believes(&BeliefQuery::new(one, strong, f("~L2 p"))) == Answer::No, || "not retracted".into())?;
        Ok(format!("sets = [{}]; default believed; belief retracted", p.show_set(wp)))
    })?
}

/// VmHWM of this process in kB.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn streaming() -> Result<String, String> {
    const WIDTH: usize = 16;
    let clauses: Vec<Formula> = (1..=WIDTH).map(|k| f(&format!("L1 p{k} | L2 q{k}"))).collect();
    let wide = Formula::conj(clauses);
    // Each DNF term contains `L1 p1` or `L2 q1` and is refuted only at the
    // block level; syntactically clashing terms would be dropped unproduced.
    let unsat = Formula::and(wide.clone(), f("~L1 (p1 | z) & ~L2 (q1 | z)"));
    let stream = to_normal_form(&wide).unwrap();
    let stats = stream.stats();
    let mut drained = 0usize;
    for d in stream {
        ensure(stats.live() == 1, || format!("{} disjuncts live", stats.live()))?;
        drop(d);
        drained += 1;
    }
    ensure(drained >= 1 << 16, || format!("only {drained} disjuncts"))?;
    ensure(stats.peak() == 1, || format!("stream peak {}", stats.peak()))?;

    let mut report = Vec::new();
    for mode in [Enumeration::Dnf, Enumeration::Split] {
        let mut d = Decider::new().with_enumeration(mode);
        ensure(!d.consistent(&unsat).unwrap(), || format!("{mode:?}: refuted formula reported SAT"))?;
        let top = d.top_level_stats().ok_or("no stream statistics")?;
        ensure(top.peak() <= 1, || format!("{mode:?} peak {}", top.peak()))?;
        if mode == Enumeration::Dnf {
            ensure(top.produced() >= 1 << 16, || format!("DNF decided after {} disjuncts", top.produced()))?;
        }
        report.push(format!("{mode:?} {} disjuncts peak {}", top.produced(), top.peak()));
        let mut d = Decider::new().with_enumeration(mode);
        ensure(d.consistent(&wide).unwrap(), || format!("{mode:?}: satisfiable formula reported UNSAT"))?;
    }
    let rss = peak_rss_kb().ok_or("VmHWM unavailable")?;
    ensure(rss < 512 * 1024, || format!("peak RSS {rss} kB"))?;
    Ok(format!("nf drained {drained} with peak 1; {}; peak RSS {} MB", report.join(", "), rss / 1024))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("published theorems VALID", theorems),
        ("extended-semantics separation", separation),
        ("axiom soundness", axiom_soundness),
        ("basic fragment: tableau vs decision", basic_agreement),
        ("single-agent finite semantics", finite_semantics),
        ("N-to-L reduction", reduction),
        ("normal-form equivalence", normal_form),
        ("Kripke counterexample", kripke_counterexample),
        ("autoepistemic default", default_reasoning),
        ("streaming discipline", streaming),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let (mark, detail) = match result {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!("criterion {:>2} {mark} {name} [{:.2?}]: {detail}", k + 1, t.elapsed());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
