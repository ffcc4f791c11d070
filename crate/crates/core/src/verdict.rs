//! Candidates, defeats and verdicts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::model::{ClassId, Fact, Sentence, TermId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateKind {
    Plain,
    /// The reference class lies inside a declared product class.
    ProductBased,
    /// The subject is a declared sample.
    SampleBased,
}

impl CandidateKind {
    pub fn name(self) -> &'static str {
        match self {
            CandidateKind::Plain => "plain",
            CandidateKind::ProductBased => "product-based",
            CandidateKind::SampleBased => "sample-based",
        }
    }
}

/// A potential reference-class inference: `subject` is known to be in
/// `reference`, and `%(target, reference) ∈ interval`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub subject: TermId,
    pub target: ClassId,
    pub reference: ClassId,
    pub interval: Interval,
    pub kind: CandidateKind,
}

impl Candidate {
    /// Order used for candidate lists: reference, then target, then subject.
    pub fn sort_key(&self) -> (&ClassId, &ClassId, &TermId) {
        (&self.reference, &self.target, &self.subject)
    }

    pub fn sentence(&self) -> Sentence {
        Sentence::new(self.subject.clone(), self.target.clone())
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in {} via {}: {}",
            self.subject, self.target, self.reference, self.interval
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Principle {
    Subset,
    Bayes,
    Supersample,
    Strength,
}

impl Principle {
    pub const ALL: [Principle; 4] = [
        Principle::Subset,
        Principle::Bayes,
        Principle::Supersample,
        Principle::Strength,
    ];

    /// Short machine name, also the edge sort key.
    pub fn name(self) -> &'static str {
        match self {
            Principle::Subset => "subset",
            Principle::Bayes => "bayes",
            Principle::Supersample => "supersample",
            Principle::Strength => "strength",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Principle::Subset => "Subset Principle",
            Principle::Bayes => "Bayesian Principle",
            Principle::Supersample => "Supersample Principle",
            Principle::Strength => "Strength Rule",
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `attacker` renders `victim` irrelevant. Indices point into the
/// candidate list the edge was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefeatEdge {
    pub attacker: usize,
    pub victim: usize,
    pub principle: Principle,
    /// Facts (declared or derived by subset closure) from which the edge
    /// can be re-derived.
    pub witnesses: Vec<Fact>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    In,
    Out,
    Undecided,
}

impl Label {
    pub fn survives(self) -> bool {
        self != Label::Out
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::In => "in",
            Label::Out => "out",
            Label::Undecided => "undecided",
        })
    }
}

/// The answer to a query together with everything needed to explain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub query: Sentence,
    pub equivalence_class: Vec<Sentence>,
    /// Cover of the survivors' intervals, or `[0, 1]` with no candidates.
    pub interval: Interval,
    pub candidates: Vec<Candidate>,
    pub edges: Vec<DefeatEdge>,
    pub labels: Vec<Label>,
    /// Indices of candidates not labelled out.
    pub survivors: Vec<usize>,
}

impl Verdict {
    pub fn survivor_candidates(&self) -> impl Iterator<Item = &Candidate> {
        self.survivors.iter().map(|&i| &self.candidates[i])
    }
}
