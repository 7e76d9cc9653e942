//! Reasoning engine for the multi-agent logic of only knowing.
//!
//! * [`formula`]: syntax, parser, printer and syntactic classifiers.
//! * [`normal_form`]: streamed disjunctive normal form.
//! * [`decision`]: consistency / validity for the language with `Val`.
//! * [`k45`]: tableau satisfiability for basic formulas.
//! * [`finite`]: single-agent semantics over a finite alphabet.
//! * [`kripke`]: finite Kripke structures and model checking.
//! * [`autoepistemic`]: belief queries on top of the decision procedure.
//! * [`corpus`]: random formula generation and cross-checks.

pub mod autoepistemic;
pub mod corpus;
pub mod decision;
pub mod error;
pub mod exec;
pub mod finite;
pub mod formula;
pub mod k45;
pub mod kripke;
pub mod normal_form;
pub mod prop;
pub mod simplify;
mod skeleton;

pub use decision::{consistent_ax, valid_ax, Decider, Enumeration, Status, Verdict};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use formula::{parse, print, AgentId, Formula};
