//! Machine-readable verdict traces.
//!
//! A [`TraceDocument`] is plain JSON. Every number is a `"num/den"` string so
//! nothing is lost to floating point, and the document carries enough to
//! recompute the verdict from the edges alone.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::surviving;
use crate::interval::Interval;
use crate::verdict::{CandidateKind, Label, Principle, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCandidate {
    pub subject: String,
    pub target: String,
    pub reference: String,
    pub interval: Interval,
    pub kind: CandidateKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEdge {
    pub attacker: usize,
    pub victim: usize,
    pub principle: Principle,
    /// Witness facts in knowledge-base syntax.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema_version: u32,
    pub query: String,
    pub equivalence_class: Vec<String>,
    pub candidates: Vec<TraceCandidate>,
    pub edges: Vec<TraceEdge>,
    pub labels: Vec<Label>,
    pub verdict: Interval,
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("malformed trace document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("edge {index} refers to a missing candidate")]
    DanglingEdge { index: usize },
    #[error("recorded labels disagree with the edges")]
    LabelMismatch,
}

impl TraceDocument {
    pub fn from_verdict(verdict: &Verdict) -> Self {
        TraceDocument {
            schema_version: SCHEMA_VERSION,
            query: verdict.query.to_string(),
            equivalence_class: verdict
                .equivalence_class
                .iter()
                .map(ToString::to_string)
                .collect(),
            candidates: verdict
                .candidates
                .iter()
                .map(|c| TraceCandidate {
                    subject: c.subject.to_string(),
                    target: c.target.to_string(),
                    reference: c.reference.to_string(),
                    interval: c.interval,
                    kind: c.kind,
                })
                .collect(),
            edges: verdict
                .edges
                .iter()
                .map(|e| TraceEdge {
                    attacker: e.attacker,
                    victim: e.victim,
                    principle: e.principle,
                    witnesses: e.witnesses.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            labels: verdict.labels.clone(),
            verdict: verdict.interval,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, TraceError> {
        let doc: TraceDocument = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(TraceError::Version(doc.schema_version));
        }
        Ok(doc)
    }

    /// Recomputes labels and verdict from the candidates and edges alone,
    /// checking the recorded labels on the way.
    pub fn rederive(&self) -> Result<Interval, TraceError> {
        let n = self.candidates.len();
        if let Some(index) = self
            .edges
            .iter()
            .position(|e| e.attacker >= n || e.victim >= n)
        {
            return Err(TraceError::DanglingEdge { index });
        }
        let labelling = surviving(n, self.edges.iter().map(|e| (e.attacker, e.victim)));
        if labelling.labels != self.labels {
            return Err(TraceError::LabelMismatch);
        }
        Ok(Interval::cover(
            labelling
                .survivors
                .iter()
                .map(|&i| &self.candidates[i].interval),
        )
        .unwrap_or(Interval::UNIT))
    }
}
