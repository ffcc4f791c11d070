use crate::closure::{known_memberships, Closures};
use crate::kb::KnowledgeBase;
use crate::model::{ClassId, Sentence};
use crate::verdict::{Candidate, CandidateKind};

/// One candidate per `(subject, target, reference)` such that
/// `subject in target` is equivalent to the query, `subject` is known to be
/// in `reference`, and `%(target, reference)` is known. Sorted by
/// reference, target, subject.
pub fn generate_candidates(
    kb: &KnowledgeBase,
    closures: &Closures,
    query: &Sentence,
) -> Vec<Candidate> {
    let mut out = Vec::new();
    for sentence in closures.equivalence.class_of(query) {
        let memberships = known_memberships(kb, &closures.subsets, &sentence.subject);
        for reference in memberships {
            if let Some(interval) = kb.stat(&sentence.class, &reference) {
                let kind = kind_of(kb, closures, &sentence, &reference);
                out.push(Candidate {
                    subject: sentence.subject.clone(),
                    target: sentence.class.clone(),
                    reference,
                    interval,
                    kind,
                });
            }
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Product-based takes precedence over sample-based.
fn kind_of(
    kb: &KnowledgeBase,
    closures: &Closures,
    sentence: &Sentence,
    reference: &ClassId,
) -> CandidateKind {
    if kb
        .products()
        .any(|(product, _, _)| closures.subsets.contains(reference, product))
    {
        CandidateKind::ProductBased
    } else if kb.is_sample(&sentence.subject) {
        CandidateKind::SampleBased
    } else {
        CandidateKind::Plain
    }
}
