//! Brute-force re-implementation of query evaluation.
//!
//! Nothing here calls into the closure or engine modules: subset closure is a
//! boolean matrix squared until it stops growing, equivalence is a path
//! search, candidates come from enumerating every (term, class, class) triple,
//! and the labelling rescans the whole graph until nothing changes.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::interval::Interval;
use crate::kb::KnowledgeBase;
use crate::model::{ClassId, Fact, Sentence, StatStatement, TermId};
use crate::rational::Rational;
use crate::verdict::{Candidate, CandidateKind, DefeatEdge, Label, Principle, Verdict};

pub const MAX_CLASSES: usize = 64;
pub const MAX_TERMS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("knowledge base too large for the oracle ({classes} classes, {terms} terms)")]
    TooLarge { classes: usize, terms: usize },
    #[error("subset facts form a cycle")]
    SubsetCycle,
}

/// Reachability matrix over the sorted class list.
pub struct Reach {
    classes: Vec<ClassId>,
    matrix: Vec<Vec<bool>>,
}

impl Reach {
    fn index(&self, c: &ClassId) -> usize {
        self.classes.binary_search(c).expect("declared class")
    }

    pub fn holds(&self, sub: &ClassId, sup: &ClassId) -> bool {
        self.matrix[self.index(sub)][self.index(sup)]
    }

    /// All `(sub, sup)` pairs, reflexive ones included.
    pub fn pairs(&self) -> BTreeSet<(ClassId, ClassId)> {
        let mut out = BTreeSet::new();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r {
                    out.insert((self.classes[i].clone(), self.classes[j].clone()));
                }
            }
        }
        out
    }
}

/// Reflexive-transitive closure by repeated boolean matrix squaring.
pub fn naive_subset_reach(kb: &KnowledgeBase) -> Result<Reach, OracleError> {
    let classes: Vec<ClassId> = kb.classes().cloned().collect();
    let n = classes.len();
    let mut reach = Reach {
        matrix: vec![vec![false; n]; n],
        classes,
    };
    for i in 0..n {
        reach.matrix[i][i] = true;
    }
    for (sub, sup) in kb.subset_facts() {
        let (i, j) = (reach.index(sub), reach.index(sup));
        reach.matrix[i][j] = true;
    }
    loop {
        let m = &reach.matrix;
        let mut squared = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                squared[i][j] = (0..n).any(|k| m[i][k] && m[k][j]);
            }
        }
        if squared == reach.matrix {
            break;
        }
        reach.matrix = squared;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && reach.matrix[i][j] && reach.matrix[j][i] {
                return Err(OracleError::SubsetCycle);
            }
        }
    }
    Ok(reach)
}

/// Sentences reachable from `start` through declared biconditionals.
pub fn naive_equivalents(kb: &KnowledgeBase, start: &Sentence) -> BTreeSet<Sentence> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(s) = queue.pop_front() {
        for (a, b) in kb.equivalences() {
            let next = if *a == s {
                b
            } else if *b == s {
                a
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next.clone());
            }
        }
    }
    seen
}

fn lo_hi(i: &Interval) -> (Rational, Rational) {
    (i.lo(), i.hi())
}

fn included(a: &Interval, b: &Interval) -> bool {
    let ((al, ah), (bl, bh)) = (lo_hi(a), lo_hi(b));
    bl <= al && ah <= bh
}

fn intervals_differ(a: &Interval, b: &Interval) -> bool {
    !included(a, b) && !included(b, a)
}

fn strictly_inside(a: &Interval, b: &Interval) -> bool {
    included(a, b) && lo_hi(a) != lo_hi(b)
}

pub fn naive_evaluate(kb: &KnowledgeBase, query: &Sentence) -> Result<Verdict, OracleError> {
    let terms: Vec<TermId> = kb.terms().cloned().collect();
    let classes: Vec<ClassId> = kb.classes().cloned().collect();
    if classes.len() > MAX_CLASSES || terms.len() > MAX_TERMS {
        return Err(OracleError::TooLarge {
            classes: classes.len(),
            terms: terms.len(),
        });
    }
    let reach = naive_subset_reach(kb)?;
    let equivalents = naive_equivalents(kb, query);

    let member = |t: &TermId, c: &ClassId| {
        kb.memberships()
            .any(|(mt, mc)| mt == t && reach.holds(mc, c))
    };
    let products: Vec<(&ClassId, &ClassId, &ClassId)> = kb.products().collect();

    let mut candidates = Vec::new();
    for subject in &terms {
        for target in &classes {
            if !equivalents.contains(&Sentence::new(subject.clone(), target.clone())) {
                continue;
            }
            for reference in &classes {
                let Some(interval) = kb.stat(target, reference) else {
                    continue;
                };
                if !member(subject, reference) {
                    continue;
                }
                let kind = if products.iter().any(|(p, _, _)| reach.holds(reference, p)) {
                    CandidateKind::ProductBased
                } else if kb.samples().any(|(t, _)| t == subject) {
                    CandidateKind::SampleBased
                } else {
                    CandidateKind::Plain
                };
                candidates.push(Candidate {
                    subject: subject.clone(),
                    target: target.clone(),
                    reference: reference.clone(),
                    interval,
                    kind,
                });
            }
        }
    }
    candidates.sort_by(|a, b| {
        (&a.reference, &a.target, &a.subject).cmp(&(&b.reference, &b.target, &b.subject))
    });

    let mut edges = Vec::new();
    for (i, x) in candidates.iter().enumerate() {
        for (j, y) in candidates.iter().enumerate() {
            if i == j {
                continue;
            }
            let differ = intervals_differ(&x.interval, &y.interval);

            if differ && x.reference != y.reference && reach.holds(&x.reference, &y.reference) {
                edges.push(DefeatEdge {
                    attacker: i,
                    victim: j,
                    principle: Principle::Subset,
                    witnesses: vec![Fact::Subset {
                        sub: x.reference.clone(),
                        sup: y.reference.clone(),
                    }],
                });
            }

            if differ && kb.pairs().any(|(name, _, _)| *name == x.subject) {
                let witness = products.iter().find(|(p, _, _)| {
                    reach.holds(&x.reference, p) && kb.stat(&x.target, p) == Some(y.interval)
                });
                if let Some((p, l, r)) = witness {
                    edges.push(DefeatEdge {
                        attacker: i,
                        victim: j,
                        principle: Principle::Bayes,
                        witnesses: vec![
                            Fact::Product {
                                product: (*p).clone(),
                                left: (*l).clone(),
                                right: (*r).clone(),
                            },
                            Fact::Subset {
                                sub: x.reference.clone(),
                                sup: (*p).clone(),
                            },
                            Fact::Stat(StatStatement {
                                target: x.target.clone(),
                                reference: (*p).clone(),
                                interval: y.interval,
                            }),
                        ],
                    });
                }
            }

            if differ
                && x.kind == CandidateKind::SampleBased
                && y.kind == CandidateKind::SampleBased
                && kb
                    .subsamples()
                    .any(|(sub, sup)| *sub == y.subject && *sup == x.subject)
            {
                edges.push(DefeatEdge {
                    attacker: i,
                    victim: j,
                    principle: Principle::Supersample,
                    witnesses: vec![Fact::Subsample {
                        sub: y.subject.clone(),
                        sup: x.subject.clone(),
                    }],
                });
            }

            if strictly_inside(&x.interval, &y.interval) {
                edges.push(DefeatEdge {
                    attacker: i,
                    victim: j,
                    principle: Principle::Strength,
                    witnesses: Vec::new(),
                });
            }
        }
    }
    edges.sort_by(|a, b| {
        (a.attacker, a.victim, a.principle.name()).cmp(&(b.attacker, b.victim, b.principle.name()))
    });

    let n = candidates.len();
    let mut labels: Vec<Option<Label>> = vec![None; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if labels[v].is_none()
                && edges
                    .iter()
                    .filter(|e| e.victim == v)
                    .all(|e| labels[e.attacker] == Some(Label::Out))
            {
                labels[v] = Some(Label::In);
                changed = true;
            }
        }
        for v in 0..n {
            if labels[v].is_none()
                && edges
                    .iter()
                    .any(|e| e.victim == v && labels[e.attacker] == Some(Label::In))
            {
                labels[v] = Some(Label::Out);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<Label> = labels
        .into_iter()
        .map(|l| l.unwrap_or(Label::Undecided))
        .collect();
    let survivors: Vec<usize> = (0..n).filter(|&i| labels[i] != Label::Out).collect();

    let interval = if survivors.is_empty() {
        Interval::UNIT
    } else {
        let lo = survivors
            .iter()
            .map(|&i| candidates[i].interval.lo())
            .min()
            .unwrap();
        let hi = survivors
            .iter()
            .map(|&i| candidates[i].interval.hi())
            .max()
            .unwrap();
        Interval::new(lo, hi).expect("hull of valid intervals")
    };

    Ok(Verdict {
        query: query.clone(),
        equivalence_class: equivalents.into_iter().collect(),
        interval,
        candidates,
        edges,
        labels,
        survivors,
    })
}
