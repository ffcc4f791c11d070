//! Reference-class reasoning over statistical knowledge.
//!
//! A knowledge base holds general statistical statements `%(A, R) ∈ [p, q]`,
//! memberships, subset, product and sample facts, and biconditionals between
//! atomic sentences. Asked for the probability of a sentence, the engine
//! gathers every reference class that could bear on it (across the sentence's
//! whole equivalence class), lets the candidates defeat one another by the
//! subset, Bayesian and supersample principles and by interval strength, and
//! answers with the cover of what survives.
//!
//! ```
//! use refclass::{evaluate, parse_kb, parse_query};
//!
//! let kb = parse_kb(
//!     "class Bird Penguin Flier
//!      term tweety
//!      subset Penguin Bird
//!      member tweety Penguin
//!      stat Flier Bird = 0.9
//!      stat Flier Penguin = 1/100",
//! )
//! .unwrap();
//! let query = parse_query("tweety in Flier", &kb).unwrap();
//! let verdict = evaluate(&kb, &query).unwrap();
//! assert_eq!(verdict.interval.to_string(), "1/100");
//! ```
//!
//! The guide in `book/` walks through the model chapter by chapter; its
//! code samples are compiled and run as doc-tests of this crate.

#![allow(clippy::result_large_err)]

pub mod closure;
pub mod engine;
pub mod interval;
pub mod kb;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod rational;
pub mod trace;
pub mod verdict;

pub use closure::{equivalence_classes, known_memberships, subset_closure, Closures};
pub use engine::{evaluate, Engine, EngineError, EvalOptions};
pub use interval::{Interval, IntervalError};
pub use kb::{KbBuilder, KbError, KnowledgeBase};
pub use model::{ClassId, Fact, Sentence, StatStatement, TermId};
pub use parser::{parse_kb, parse_query, serialize_kb, ParseError, ParseErrors, QueryError};
pub use rational::Rational;
pub use trace::TraceDocument;
pub use verdict::{Candidate, CandidateKind, DefeatEdge, Label, Principle, Verdict};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kb-format.md")]
    mod kb_format {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/closures.md")]
    mod closures {}
    #[doc = include_str!("../../../book/src/principles.md")]
    mod principles {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
