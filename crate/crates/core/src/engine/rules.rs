//! The pairwise defeat rules.
//!
//! Each rule looks at an ordered pair `(x, y)` of candidates and decides
//! whether `x` renders `y` irrelevant. The three relevance principles only
//! fire between candidates whose intervals differ; the strength rule fires
//! when `x`'s interval is strictly nested inside `y`'s.

use crate::closure::Closures;
use crate::kb::KnowledgeBase;
use crate::model::{Fact, StatStatement};
use crate::verdict::{Candidate, CandidateKind, Principle};

/// A rule firing, before it is attached to candidate indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defeat {
    pub principle: Principle,
    pub witnesses: Vec<Fact>,
}

/// A statistic on a known proper subclass defeats one on the superclass.
pub fn subset_defeats(x: &Candidate, y: &Candidate, closures: &Closures) -> Option<Defeat> {
    if x.reference == y.reference
        || !x.interval.differs(&y.interval)
        || !closures.subsets.contains(&x.reference, &y.reference)
    {
        return None;
    }
    Some(Defeat {
        principle: Principle::Subset,
        witnesses: vec![Fact::Subset {
            sub: x.reference.clone(),
            sup: y.reference.clone(),
        }],
    })
}

/// `x` is about a pair drawn from a class inside a product space `P`, and
/// the statistic for `x`'s target over all of `P` matches `y`'s interval:
/// `y` is then just the unconditioned view of the same compound experiment.
///
/// The first qualifying product in sorted order is recorded as witness.
pub fn bayes_defeats(
    x: &Candidate,
    y: &Candidate,
    kb: &KnowledgeBase,
    closures: &Closures,
) -> Option<Defeat> {
    if !kb.is_pair(&x.subject) || !x.interval.differs(&y.interval) {
        return None;
    }
    kb.products().find_map(|(product, left, right)| {
        if !closures.subsets.contains(&x.reference, product) {
            return None;
        }
        let matching = kb.stat(&x.target, product)?;
        (matching == y.interval).then(|| Defeat {
            principle: Principle::Bayes,
            witnesses: vec![
                Fact::Product {
                    product: product.clone(),
                    left: left.clone(),
                    right: right.clone(),
                },
                Fact::Subset {
                    sub: x.reference.clone(),
                    sup: product.clone(),
                },
                Fact::Stat(StatStatement {
                    target: x.target.clone(),
                    reference: product.clone(),
                    interval: matching,
                }),
            ],
        })
    })
}

/// A candidate grounded in a larger sample defeats one grounded in a
/// sample it contains.
pub fn supersample_defeats(x: &Candidate, y: &Candidate, kb: &KnowledgeBase) -> Option<Defeat> {
    if x.kind != CandidateKind::SampleBased
        || y.kind != CandidateKind::SampleBased
        || !x.interval.differs(&y.interval)
        || !kb.has_subsample(&y.subject, &x.subject)
    {
        return None;
    }
    Some(Defeat {
        principle: Principle::Supersample,
        witnesses: vec![Fact::Subsample {
            sub: y.subject.clone(),
            sup: x.subject.clone(),
        }],
    })
}

/// A strictly narrower interval defeats a wider one.
pub fn strength_defeats(x: &Candidate, y: &Candidate) -> Option<Defeat> {
    x.interval.stronger(&y.interval).then(|| Defeat {
        principle: Principle::Strength,
        witnesses: Vec::new(),
    })
}

/// Every rule that fires for `(x, y)`, in principle order.
pub fn all_defeats(
    x: &Candidate,
    y: &Candidate,
    kb: &KnowledgeBase,
    closures: &Closures,
) -> Vec<Defeat> {
    [
        subset_defeats(x, y, closures),
        bayes_defeats(x, y, kb, closures),
        supersample_defeats(x, y, kb),
        strength_defeats(x, y),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Re-derives an edge from its recorded witnesses alone: every witness must
/// hold in `kb`, and the witnesses together with the two candidates must
/// satisfy the rule's condition.
pub fn replay(
    principle: Principle,
    witnesses: &[Fact],
    x: &Candidate,
    y: &Candidate,
    kb: &KnowledgeBase,
    closures: &Closures,
) -> bool {
    let holds = |fact: &Fact| match fact {
        Fact::Subset { sub, sup } => closures.subsets.contains(sub, sup),
        Fact::Product {
            product,
            left,
            right,
        } => kb.product_factors(product) == Some((left, right)),
        Fact::Stat(s) => kb.stat(&s.target, &s.reference) == Some(s.interval),
        Fact::Subsample { sub, sup } => kb.has_subsample(sub, sup),
        _ => false,
    };
    if !witnesses.iter().all(holds) {
        return false;
    }
    match (principle, witnesses) {
        (Principle::Subset, [Fact::Subset { sub, sup }]) => {
            sub == &x.reference
                && sup == &y.reference
                && sub != sup
                && x.interval.differs(&y.interval)
        }
        (
            Principle::Bayes,
            [Fact::Product { product, .. }, Fact::Subset { sub, sup }, Fact::Stat(s)],
        ) => {
            kb.is_pair(&x.subject)
                && sub == &x.reference
                && sup == product
                && &s.reference == product
                && s.target == x.target
                && s.interval == y.interval
                && x.interval.differs(&y.interval)
        }
        (Principle::Supersample, [Fact::Subsample { sub, sup }]) => {
            sub == &y.subject
                && sup == &x.subject
                && kb.is_sample(sub)
                && kb.is_sample(sup)
                && x.interval.differs(&y.interval)
        }
        (Principle::Strength, []) => x.interval.stronger(&y.interval),
        _ => false,
    }
}
