//! Independent reference implementation and test-data tooling.
//!
//! The oracle shares only the data types with the engine. Agreement between
//! [`naive_evaluate`] and [`crate::engine::evaluate`] on generated knowledge
//! bases is therefore evidence that both implement the same rules.

mod check;
mod naive;
mod random;

pub use check::{check_extensional, ConsistencyReport, Violation};
pub use naive::{
    naive_equivalents, naive_evaluate, naive_subset_reach, OracleError, Reach, MAX_CLASSES,
    MAX_TERMS,
};
pub use random::{queryable_sentences, random_kb, Lcg, RandomBounds};
