mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use onlyknow_core::autoepistemic::{self, BeliefQuery};
use onlyknow_core::corpus::{self, CorpusEntry};
use onlyknow_core::finite::{self, Alphabet, Semantics};
use onlyknow_core::formula::{classify, parse_unbounded};
use onlyknow_core::kripke::{KripkeStructure, NSemantics};
use onlyknow_core::normal_form;
use onlyknow_core::{exec, k45, AgentId, Decider, Enumeration, Error, Formula, Status, Strategy};

use output::{Format, Out};

const BUDGET_VAR: &str = "ONLYKNOW_TIME_BUDGET";

#[derive(Parser)]
#[command(name = "onlyknow", version, about = "Reasoning about only knowing, for one or many agents")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format: plain text or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Time budget in seconds per query; ONLYKNOW_TIME_BUDGET overrides it.
    #[arg(long, global = true)]
    time_budget: Option<f64>,
    /// Worker threads for corpus batches and finite enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Leave `millis` out of JSON records, making output byte-for-byte
    /// reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it in canonical syntax.
    Parse {
        formula: String,
        #[arg(long)]
        agents: Option<u32>,
    },
    /// Syntactic classification with respect to one agent or every agent.
    Classify {
        formula: String,
        #[arg(long)]
        agents: Option<u32>,
        #[arg(long)]
        agent: Option<u32>,
    },
    /// Print normal-form disjuncts, one per line.
    Nf {
        formula: String,
        #[arg(long)]
        agents: Option<u32>,
        /// Stop after this many disjuncts.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decide satisfiability or validity; exit 0 on SAT/VALID, 1 otherwise.
    Decide(DecideArgs),
    /// K45 tableau for basic formulas.
    K45 {
        formula: String,
        #[arg(long)]
        agents: Option<u32>,
        /// Write the witness model as JSON here when satisfiable.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Brute-force validity over a finite alphabet (agent 1 only).
    Oracle {
        formula: String,
        #[arg(long)]
        phi: String,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Levesque)]
        semantics: SemanticsArg,
        #[arg(long, default_value_t = finite::DEFAULT_BOUND)]
        bound: usize,
    },
    /// Rewrite `N_1` into `L_1` over a finite alphabet.
    Reduce {
        formula: String,
        #[arg(long)]
        phi: String,
    },
    /// Model checking and frame validation for Kripke structures.
    Kripke {
        #[command(subcommand)]
        command: KripkeCommand,
    },
    /// Does agent i, knowing only the KB, believe the query?
    Believes {
        #[arg(long)]
        agent: u32,
        #[arg(long)]
        kb: String,
        #[arg(long)]
        query: String,
        #[arg(long)]
        agents: Option<u32>,
    },
    /// Epistemic states in which agent 1 only knows the formula.
    OknSets {
        formula: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = finite::DEFAULT_BOUND)]
        bound: usize,
    },
}

#[derive(Args)]
struct DecideArgs {
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    formula: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Valid)]
    mode: Mode,
    #[arg(long)]
    agents: Option<u32>,
    /// Print one line per rule application.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    memo: bool,
    #[arg(long, value_enum, default_value_t = EnumerationArg::Split)]
    enumeration: EnumerationArg,
    /// Run every entry of a json-lines corpus with its own procedure.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Subcommand)]
enum KripkeCommand {
    /// Evaluate a formula at a world; exit 0 if true, 1 if false.
    Check {
        model: PathBuf,
        formula: String,
        #[arg(long)]
        world: String,
        #[arg(long, value_enum, default_value_t = NSemanticsArg::Basic)]
        semantics: NSemanticsArg,
    },
    /// List transitivity and Euclideanness violations; exit 0 if none.
    Validate { model: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sat,
    Valid,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Levesque,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum NSemanticsArg {
    Basic,
    Naive,
    Fixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerationArg {
    Split,
    Dnf,
}

/// How a command ended; maps onto the process exit code.
enum Outcome {
    Holds,
    Fails,
    TimedOut,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

type CliResult = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out::new(cli.global.format, !cli.global.no_timing);
    match budget(&cli.global).and_then(|b| run(cli.command, &cli.global, b, &mut out)) {
        Ok(Outcome::Holds) => ExitCode::from(0),
        Ok(Outcome::Fails) => ExitCode::from(1),
        Ok(Outcome::TimedOut) => ExitCode::from(3),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn budget(global: &Global) -> Result<Option<Duration>, String> {
    let secs = match std::env::var(BUDGET_VAR) {
        Ok(v) => Some(v.trim().parse::<f64>().map_err(|_| format!("{BUDGET_VAR} is not a number: {v}"))?),
        Err(_) => global.time_budget,
    };
    match secs {
        Some(s) if !(s.is_finite() && s > 0.0) => Err(format!("time budget must be positive, got {s}")),
        Some(s) => Ok(Some(Duration::from_secs_f64(s))),
        None => Ok(None),
    }
}

fn strategy(global: &Global) -> Strategy {
    if global.jobs > 1 {
        Strategy::Parallel
    } else {
        Strategy::Sequential
    }
}

/// Parses `text`, defaulting the agent count to the largest index it
/// mentions.
fn formula(text: &str, agents: Option<u32>) -> Result<(Formula, u32), String> {
    let mentioned = parse_unbounded(text).map_err(|e| e.to_string())?.max_agent().max(1);
    let n = agents.unwrap_or(mentioned);
    if n == 0 {
        return Err("--agents must be at least 1".into());
    }
    let f = onlyknow_core::parse(text, n).map_err(|e| e.to_string())?;
    Ok((f, n))
}

fn agent(index: u32) -> Result<AgentId, String> {
    AgentId::new(index).map_err(|e| e.to_string())
}

fn err(e: Error) -> String {
    e.to_string()
}

fn run(command: Command, global: &Global, budget: Option<Duration>, out: &mut Out) -> CliResult {
    let started = Instant::now();
    let deadline = budget.map(|b| started + b);
    match command {
        Command::Parse { formula: text, agents } => {
            let (f, n) = formula(&text, agents)?;
            out.record(
                json!({ "input": text, "formula": f.to_string(), "agents": n, "size": f.size() }),
                f.to_string(),
            );
            Ok(Outcome::Holds)
        }
        Command::Classify { formula: text, agents, agent: which } => {
            let (f, n) = formula(&text, agents)?;
            let targets: Vec<u32> = match which {
                Some(i) if i > n => return Err(format!("agent {i} out of range 1..={n}")),
                Some(i) => vec![i],
                None => (1..=n).collect(),
            };
            for i in targets {
                let c = classify(&f, agent(i)?);
                let depth = c.modal_depth.map_or("n/a".to_string(), |d| d.to_string());
                let text_line = format!(
                    "agent {i}: propositional={} basic={} objective={} subjective={} onl_minus={} depth={depth}",
                    c.propositional, c.basic, c.i_objective, c.i_subjective, c.in_onl_minus
                );
                out.record(json!({ "input": text, "class": c }), text_line);
            }
            Ok(Outcome::Holds)
        }
        Command::Nf { formula: text, agents, limit } => {
            let (f, _) = formula(&text, agents)?;
            let stream = normal_form::to_normal_form(&f).map_err(err)?;
            for (index, d) in stream.take(limit.unwrap_or(usize::MAX)).enumerate() {
                let line = d.to_formula().to_string();
                out.record(json!({ "input": text, "index": index, "disjunct": line }), line.clone());
            }
            Ok(Outcome::Holds)
        }
        Command::Decide(args) => match &args.corpus {
            Some(path) => run_corpus(path, &args, global, budget, out),
            None => decide(&args, deadline, started, out),
        },
        Command::K45 { formula: text, agents, witness } => {
            let (f, n) = formula(&text, agents)?;
            let model = k45::sat_with_witness(&f, n).map_err(err)?;
            let sat = model.is_some();
            if let (Some(path), Some(m)) = (&witness, &model) {
                std::fs::write(path, m.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let verdict = if sat { "SAT" } else { "UNSAT" };
            out.verdict(&text, verdict, started, None);
            Ok(sat.into())
        }
        Command::Oracle { formula: text, phi, semantics, bound } => {
            let (f, _) = formula(&text, Some(1))?;
            let alphabet = Alphabet::parse(&phi).map_err(err)?;
            let sem = match semantics {
                SemanticsArg::Levesque => Semantics::LevesqueComplementary,
                SemanticsArg::Extended => Semantics::Extended,
            };
            let strat = strategy(global);
            let v = exec::with_threads(global.jobs, || finite::oracle_valid(&f, &alphabet, sem, bound, strat))
                .map_err(err)?;
            let cx = v.counterexample.map(|s| s.show(&alphabet));
            out.verdict(&text, if v.valid { "VALID" } else { "INVALID" }, started, cx);
            Ok(v.valid.into())
        }
        Command::Reduce { formula: text, phi } => {
            let (f, _) = formula(&text, Some(1))?;
            let alphabet = Alphabet::parse(&phi).map_err(err)?;
            let r = finite::reduce_n_to_l(&f, &alphabet).map_err(err)?;
            out.record(json!({ "input": text, "formula": r.to_string() }), r.to_string());
            Ok(Outcome::Holds)
        }
        Command::Kripke { command } => kripke(command, started, out),
        Command::Believes { agent: i, kb, query, agents } => {
            let (kb_f, n_kb) = formula(&kb, agents)?;
            let (query_f, n_q) = formula(&query, agents)?;
            let n = agents.unwrap_or(n_kb.max(n_q).max(i));
            if i > n {
                return Err(format!("agent {i} out of range 1..={n}"));
            }
            let q = BeliefQuery::new(agent(i)?, kb_f, query_f);
            let mut decider = deadline.map_or_else(Decider::new, |d| Decider::new().with_deadline(d));
            let input = q.entailment().to_string();
            match q.decide(&mut decider) {
                Ok(answer) => {
                    out.verdict(&input, &answer.to_string(), started, None);
                    Ok((answer == autoepistemic::Answer::Yes).into())
                }
                Err(Error::Timeout) => {
                    out.timeout(&input, started, None);
                    Ok(Outcome::TimedOut)
                }
                Err(e) => Err(err(e)),
            }
        }
        Command::OknSets { formula: text, phi, bound } => {
            let (f, _) = formula(&text, Some(1))?;
            let alphabet = Alphabet::parse(&phi).map_err(err)?;
            let strat = strategy(global);
            let sets =
                exec::with_threads(global.jobs, || autoepistemic::only_knowing_sets(&f, &alphabet, bound, strat))
                    .map_err(err)?;
            let shown: Vec<String> = sets.iter().map(|&s| alphabet.show_set(s)).collect();
            let text_out = if shown.is_empty() { "none".to_string() } else { shown.join("\n") };
            out.record(json!({ "input": text, "sets": shown }), text_out);
            Ok((!sets.is_empty()).into())
        }
    }
}

fn decide(args: &DecideArgs, deadline: Option<Instant>, started: Instant, out: &mut Out) -> CliResult {
    let text = args.formula.as_deref().expect("clap requires a formula without --corpus");
    let (f, _) = formula(text, args.agents)?;
    let mut decider = Decider::new().with_enumeration(match args.enumeration {
        EnumerationArg::Split => Enumeration::Split,
        EnumerationArg::Dnf => Enumeration::Dnf,
    });
    if args.trace {
        decider = decider.with_trace();
    }
    if args.memo {
        decider = decider.with_memo();
    }
    if let Some(d) = deadline {
        decider = decider.with_deadline(d);
    }
    let verdict = match args.mode {
        Mode::Sat => decider.consistent_verdict(&f),
        Mode::Valid => decider.valid_verdict(&f),
    };
    match verdict {
        Ok(v) => {
            out.decision(text, &v, started);
            Ok(v.status.holds().into())
        }
        Err(Error::Timeout) => {
            let examined = decider.top_level_stats().map(|s| s.produced());
            out.timeout(text, started, examined);
            Ok(Outcome::TimedOut)
        }
        Err(e) => Err(err(e)),
    }
}

fn kripke(command: KripkeCommand, started: Instant, out: &mut Out) -> CliResult {
    let load = |path: &PathBuf| -> Result<KripkeStructure, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        KripkeStructure::from_json(&text).map_err(err)
    };
    match command {
        KripkeCommand::Check { model, formula: text, world, semantics } => {
            let m = load(&model)?;
            let (f, _) = formula(&text, None)?;
            let w = m.world(&world).map_err(err)?;
            let sem = match semantics {
                NSemanticsArg::Basic => NSemantics::Basic,
                NSemanticsArg::Naive => NSemantics::Naive,
                NSemanticsArg::Fixed => NSemantics::Fixed,
            };
            let holds = m.check(w, &f, sem).map_err(err)?;
            out.verdict(&text, if holds { "TRUE" } else { "FALSE" }, started, None);
            Ok(holds.into())
        }
        KripkeCommand::Validate { model } => {
            let m = load(&model)?;
            let report = m.validate();
            let mut lines = Vec::new();
            for (i, u, v, w) in &report.transitivity {
                lines.push(format!("transitivity agent {i}: ({u},{v}) ({v},{w}) without ({u},{w})"));
            }
            for (i, u, v, w) in &report.euclidean {
                lines.push(format!("euclidean agent {i}: ({u},{v}) ({u},{w}) without ({v},{w})"));
            }
            let ok = report.is_k45();
            lines.push(if ok { "K45".into() } else { "NOT K45".into() });
            out.record(
                json!({ "input": model.display().to_string(), "k45": ok, "violations": report }),
                lines.join("\n"),
            );
            Ok(ok.into())
        }
    }
}

/// Runs a corpus, one record per entry in file order. Exit 1 if any verdict
/// differs from the expected one, else 3 if any entry timed out.
fn run_corpus(path: &PathBuf, args: &DecideArgs, global: &Global, budget: Option<Duration>, out: &mut Out) -> CliResult {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let entries = corpus::parse_corpus(&text).map_err(err)?;
    let memo = args.memo;
    let results = exec::with_threads(global.jobs, || {
        exec::map(&entries, strategy(global), |entry: &CorpusEntry| {
            let started = Instant::now();
            let mut decider = Decider::new();
            if memo {
                decider = decider.with_memo();
            }
            if let Some(b) = budget {
                decider = decider.with_deadline(started + b);
            }
            (entry.run(&mut decider), started.elapsed())
        })
    });
    let mut outcome = Outcome::Holds;
    for (entry, (result, elapsed)) in entries.iter().zip(results) {
        let status: Option<Status> = match result {
            Ok(s) => Some(s),
            Err(Error::Timeout) => None,
            Err(e) => return Err(format!("{}: {e}", entry.formula)),
        };
        let matches = status == Some(entry.expected);
        out.corpus_entry(entry, status, elapsed);
        outcome = match (outcome, status, matches) {
            (Outcome::Fails, _, _) => Outcome::Fails,
            (_, Some(_), false) => Outcome::Fails,
            (_, None, _) => Outcome::TimedOut,
            (o, _, _) => o,
        };
    }
    Ok(outcome)
}
