//! Text and json-lines rendering. Every command emits through [`Out`], so
//! the two formats stay in step.

use std::io::Write;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use serde_json::{json, Value};

use onlyknow_core::corpus::CorpusEntry;
use onlyknow_core::{Status, Verdict};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json-lines")]
    Json,
}

pub struct Out {
    format: Format,
    timing: bool,
    stdout: std::io::StdoutLock<'static>,
}

fn millis(d: Duration) -> u64 {
    d.as_millis().try_into().unwrap_or(u64::MAX)
}

impl Out {
    pub fn new(format: Format, timing: bool) -> Self {
        Out { format, timing, stdout: std::io::stdout().lock() }
    }

    fn line(&mut self, s: &str) {
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let _ = writeln!(self.stdout, "{s}");
    }

    /// Emits `record` in json mode, `text` otherwise.
    pub fn record(&mut self, record: Value, text: String) {
        match self.format {
            Format::Json => self.line(&record.to_string()),
            Format::Text => self.line(&text),
        }
    }

    fn timed(&self, mut record: Value, elapsed: Duration) -> Value {
        if self.timing {
            record["millis"] = json!(millis(elapsed));
        }
        record
    }

    pub fn verdict(&mut self, input: &str, verdict: &str, started: Instant, counterexample: Option<String>) {
        let mut record = self.timed(json!({ "input": input, "verdict": verdict.to_lowercase() }), started.elapsed());
        let mut text = verdict.to_string();
        if let Some(cx) = counterexample {
            text.push_str(&format!("\ncounterexample: {cx}"));
            record["counterexample"] = json!(cx);
        }
        self.record(record, text);
    }

    pub fn decision(&mut self, input: &str, v: &Verdict, started: Instant) {
        let mut record =
            self.timed(json!({ "input": input, "verdict": v.status, }), started.elapsed());
        let mut text = v.status.to_string();
        if let Some(trace) = &v.trace {
            record["trace"] = json!(trace);
            for step in trace {
                text.push_str(&format!("\n{step}"));
            }
        }
        self.record(record, text);
    }

    /// The partial-result marker: no verdict, plus how far the outermost
    /// enumeration got when known.
    pub fn timeout(&mut self, input: &str, started: Instant, examined: Option<usize>) {
        let mut record = self.timed(json!({ "input": input, "verdict": "timeout", "partial": true }), started.elapsed());
        let mut text = "TIMEOUT (partial)".to_string();
        if let Some(n) = examined {
            record["disjuncts_examined"] = json!(n);
            text = format!("TIMEOUT (partial: {n} disjuncts examined)");
        }
        self.record(record, text);
    }

    pub fn corpus_entry(&mut self, entry: &CorpusEntry, status: Option<Status>, elapsed: Duration) {
        let verdict = status.map_or(json!("timeout"), |s| json!(s));
        let ok = status == Some(entry.expected);
        let record = self.timed(
            json!({
                "input": entry.formula,
                "verdict": verdict,
                "expected": entry.expected,
                "semantics": entry.semantics,
                "ok": ok,
            }),
            elapsed,
        );
        let shown = status.map_or("TIMEOUT".to_string(), |s| s.to_string());
        let mark = if ok { "ok" } else { "MISMATCH" };
        let text = format!("{mark:8} {shown:8} (expected {}) {}", entry.expected, entry.formula);
        self.record(record, text);
    }
}
