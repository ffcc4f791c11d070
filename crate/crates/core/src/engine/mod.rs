//! Query evaluation.
//!
//! For a queried sentence the engine
//!
//! 1. collects the sentence's equivalence class,
//! 2. generates every candidate reference-class inference for that class,
//! 3. builds the defeat graph from the four pairwise rules,
//! 4. labels the graph with its grounded fixpoint, and
//! 5. answers with the cover of the surviving candidates' intervals, or
//!    `[0, 1]` when there is nothing to go on.

mod candidates;
mod fixpoint;
mod rules;

pub use candidates::generate_candidates;
pub use fixpoint::{surviving, Labelling};
pub use rules::{
    all_defeats, bayes_defeats, replay, strength_defeats, subset_defeats, supersample_defeats,
    Defeat,
};

use thiserror::Error;

use crate::closure::Closures;
use crate::interval::Interval;
use crate::kb::{KbError, KnowledgeBase};
use crate::model::Sentence;
use crate::verdict::{Candidate, DefeatEdge, Verdict};

pub const DEFAULT_MAX_CANDIDATES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Inconsistent(#[from] KbError),
    #[error("query mentions undeclared term `{0}`")]
    UnknownTerm(String),
    #[error("query mentions undeclared class `{0}`")]
    UnknownClass(String),
    #[error("{found} candidates exceed the limit of {limit}")]
    TooManyCandidates { found: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub max_candidates: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

/// Directed attacks among a candidate list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefeatGraph {
    pub edges: Vec<DefeatEdge>,
}

/// Applies every rule to every ordered pair of distinct candidates. Edges are
/// sorted by attacker, victim and principle name; one pair may carry several
/// principles.
pub fn defeat_graph(
    candidates: &[Candidate],
    kb: &KnowledgeBase,
    closures: &Closures,
) -> DefeatGraph {
    let mut edges = Vec::new();
    for (i, x) in candidates.iter().enumerate() {
        for (j, y) in candidates.iter().enumerate() {
            if i == j {
                continue;
            }
            for d in all_defeats(x, y, kb, closures) {
                edges.push(DefeatEdge {
                    attacker: i,
                    victim: j,
                    principle: d.principle,
                    witnesses: d.witnesses,
                });
            }
        }
    }
    edges.sort_by(|a, b| {
        (a.attacker, a.victim, a.principle.name()).cmp(&(b.attacker, b.victim, b.principle.name()))
    });
    DefeatGraph { edges }
}

/// Evaluator bound to one knowledge base, with its closures computed once.
/// Evaluation does not mutate anything, so one engine can serve queries
/// from several threads.
#[derive(Debug, Clone)]
pub struct Engine<'kb> {
    kb: &'kb KnowledgeBase,
    closures: Closures,
    options: EvalOptions,
}

impl<'kb> Engine<'kb> {
    pub fn new(kb: &'kb KnowledgeBase) -> Result<Self, EngineError> {
        Self::with_options(kb, EvalOptions::default())
    }

    pub fn with_options(kb: &'kb KnowledgeBase, options: EvalOptions) -> Result<Self, EngineError> {
        Ok(Engine {
            kb,
            closures: Closures::compute(kb)?,
            options,
        })
    }

    pub fn closures(&self) -> &Closures {
        &self.closures
    }

    pub fn knowledge_base(&self) -> &KnowledgeBase {
        self.kb
    }

    pub fn evaluate(&self, query: &Sentence) -> Result<Verdict, EngineError> {
        if !self.kb.is_term(&query.subject) {
            return Err(EngineError::UnknownTerm(query.subject.to_string()));
        }
        if !self.kb.is_class(&query.class) {
            return Err(EngineError::UnknownClass(query.class.to_string()));
        }

        let candidates = generate_candidates(self.kb, &self.closures, query);
        if candidates.len() > self.options.max_candidates {
            return Err(EngineError::TooManyCandidates {
                found: candidates.len(),
                limit: self.options.max_candidates,
            });
        }
        let graph = defeat_graph(&candidates, self.kb, &self.closures);
        let labelling = surviving(
            candidates.len(),
            graph.edges.iter().map(|e| (e.attacker, e.victim)),
        );
        let interval =
            Interval::cover(labelling.survivors.iter().map(|&i| &candidates[i].interval))
                .unwrap_or(Interval::UNIT);

        Ok(Verdict {
            query: query.clone(),
            equivalence_class: self.closures.equivalence.class_of(query),
            interval,
            candidates,
            edges: graph.edges,
            labels: labelling.labels,
            survivors: labelling.survivors,
        })
    }
}

/// One-shot evaluation with default options.
pub fn evaluate(kb: &KnowledgeBase, query: &Sentence) -> Result<Verdict, EngineError> {
    Engine::new(kb)?.evaluate(query)
}
