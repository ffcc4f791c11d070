//! Reproducible random knowledge bases.
//!
//! The generator draws from a 64-bit linear congruential generator
//!
//! ```text
//! state ← state · 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! draw  ← state >> 33                                         (31 bits)
//! ```
//!
//! seeded with `state = seed`, and `below(n) = draw mod n`. Together with the
//! fixed order of draws in [`random_kb`] this pins every generated knowledge
//! base, so the same corpus can be regenerated in any language.

use crate::interval::Interval;
use crate::kb::{KbBuilder, KnowledgeBase};
use crate::model::{ClassId, Fact, Sentence, StatStatement, TermId};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 33) as u32
    }

    /// Uniform-ish draw from `0..n`; `0` when `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.next_u32() as usize % n
        }
    }

    /// Draw from `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }
}

/// Upper bounds on the size of a generated knowledge base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_classes: usize,
    pub max_terms: usize,
    pub max_stats: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_classes: 10,
            max_terms: 10,
            max_stats: 6,
        }
    }
}

/// Generates a valid knowledge base. Draw order:
///
/// 1. class count `1..=max_classes` (no classes at all when the bound is 0,
///    giving the empty knowledge base); classes are `C0, C1, ...`;
/// 2. for each `i > j`, `subset Ci Cj` with probability 1/4 (so the subset
///    graph is acyclic);
/// 3. with three or more classes, each `Ci` becomes `product Ci = Cl x Cr`
///    with probability 1/4, for random `l, r` other than `i`;
/// 4. term count `0..=max_terms`; term `k` is the pair `pk` of two earlier
///    terms with probability 1/3 once two atomic terms exist, otherwise the
///    atomic term `tk`;
/// 5. each (term, class) membership with probability 1/4, skipped for atomic
///    terms when the class lies inside a product class;
/// 6. each atomic term is a sample of a random class with probability 1/3,
///    and each ordered pair of samples is a subsample pair with probability
///    1/2;
/// 7. `0..=4` equivalences between random sentences; once subsample pairs
///    exist, each equivalence links sentences about the two sides of one
///    such pair with probability 1/2;
/// 8. `0..=max_stats` statistics. With probability 1/3 (when equivalences
///    exist) a statistic is anchored: a random sentence `s in T` from an
///    equivalence gives the target `T` and, if `s` has declared memberships,
///    one of them as reference. Otherwise the target is drawn with `below(3)`: 1
///    picks a class named in an equivalence, 2 the target of an earlier
///    statistic, 0 any class. The reference is drawn with `below(4)`: 1
///    picks a class with a declared member, 2 a product class, 3 a class
///    above or below an earlier statistic's reference, 0 any class. A choice
///    with nothing to choose from falls back to any class. Each statistic
///    reuses an earlier interval with probability 1/2 or else draws
///    endpoints `a/d, b/d` with `d` in `1..=20` (a point with probability
///    1/2); repeated pairs are dropped;
/// 9. each class is enumerated with probability 1/8, each atomic term
///    included with probability 1/2.
pub fn random_kb(seed: u64, bounds: RandomBounds) -> KnowledgeBase {
    let mut rng = Lcg::new(seed);
    let mut b = KbBuilder::default();
    if bounds.max_classes == 0 {
        return b.build().expect("empty knowledge base is valid");
    }

    let nc = rng.between(1, bounds.max_classes);
    let class = |i: usize| ClassId::new(format!("C{i}"));
    for i in 0..nc {
        b.add(Fact::Class(class(i)));
    }

    let mut direct_supers: Vec<Vec<usize>> = vec![Vec::new(); nc];
    for i in 1..nc {
        for j in 0..i {
            if rng.chance(1, 4) {
                direct_supers[i].push(j);
                b.add(Fact::Subset {
                    sub: class(i),
                    sup: class(j),
                });
            }
        }
    }

    let mut is_product = vec![false; nc];
    if nc >= 3 {
        for i in 0..nc {
            if rng.chance(1, 4) {
                let (l, r) = (rng.below(nc), rng.below(nc));
                if l != i && r != i {
                    is_product[i] = true;
                    b.add(Fact::Product {
                        product: class(i),
                        left: class(l),
                        right: class(r),
                    });
                }
            }
        }
    }

    // Superset sets in index order: supers only point to lower indices.
    let mut reach: Vec<Vec<bool>> = vec![vec![false; nc]; nc];
    for i in 0..nc {
        reach[i][i] = true;
        for &j in &direct_supers[i].clone() {
            for k in 0..nc {
                if reach[j][k] {
                    reach[i][k] = true;
                }
            }
        }
    }
    let pair_only: Vec<bool> = (0..nc)
        .map(|i| (0..nc).any(|p| is_product[p] && reach[i][p]))
        .collect();

    let nt = rng.between(0, bounds.max_terms);
    let mut terms: Vec<(TermId, bool)> = Vec::new();
    let mut atomic = 0;
    for k in 0..nt {
        if atomic >= 2 && rng.chance(1, 3) {
            let first = terms[rng.below(terms.len())].0.clone();
            let second = terms[rng.below(terms.len())].0.clone();
            let name = TermId::new(format!("p{k}"));
            b.add(Fact::Pair {
                name: name.clone(),
                first,
                second,
            });
            terms.push((name, true));
        } else {
            let name = TermId::new(format!("t{k}"));
            b.add(Fact::Term(name.clone()));
            terms.push((name, false));
            atomic += 1;
        }
    }

    let mut member_classes = std::collections::BTreeSet::new();
    let mut member_of: std::collections::BTreeMap<TermId, Vec<usize>> = Default::default();
    for (term, is_pair) in &terms {
        for c in 0..nc {
            if rng.chance(1, 4) && (*is_pair || !pair_only[c]) {
                member_classes.insert(c);
                member_of
                    .entry(term.clone())
                    .or_default()
                    .push(c);
                b.add(Fact::Member {
                    term: term.clone(),
                    class: class(c),
                });
            }
        }
    }

    let mut samples = Vec::new();
    for (term, is_pair) in &terms {
        if !is_pair && rng.chance(1, 3) {
            b.add(Fact::Sample {
                term: term.clone(),
                population: class(rng.below(nc)),
            });
            samples.push(term.clone());
        }
    }
    let mut subsample_pairs = Vec::new();
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            if i != j && rng.chance(1, 2) {
                subsample_pairs.push((samples[i].clone(), samples[j].clone()));
                b.add(Fact::Subsample {
                    sub: samples[i].clone(),
                    sup: samples[j].clone(),
                });
            }
        }
    }

    let mut equiv_classes: Vec<ClassId> = Vec::new();
    let mut equiv_sentences: Vec<Sentence> = Vec::new();
    let ne = rng.below(5);
    for _ in 0..ne {
        if terms.is_empty() {
            break;
        }
        let (s, t) = if !subsample_pairs.is_empty() && rng.chance(1, 2) {
            let (sub, sup) = subsample_pairs[rng.below(subsample_pairs.len())].clone();
            (
                Sentence::new(sub, class(rng.below(nc))),
                Sentence::new(sup, class(rng.below(nc))),
            )
        } else {
            let mut sentence = || {
                Sentence::new(
                    terms[rng.below(terms.len())].0.clone(),
                    class(rng.below(nc)),
                )
            };
            (sentence(), sentence())
        };
        equiv_classes.push(s.class.clone());
        equiv_classes.push(t.class.clone());
        equiv_sentences.push(s.clone());
        equiv_sentences.push(t.clone());
        b.add(Fact::Equiv(s, t));
    }

    let products: Vec<usize> = (0..nc).filter(|&i| is_product[i]).collect();
    let ns = rng.between(0, bounds.max_stats);
    let mut pool: Vec<Interval> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut stated: Vec<(usize, usize)> = Vec::new();
    for _ in 0..ns {
        let anchor = if !equiv_sentences.is_empty() && rng.chance(1, 3) {
            let s = &equiv_sentences[rng.below(equiv_sentences.len())];
            match member_of.get(&s.subject) {
                Some(classes) => {
                    let t = (0..nc)
                        .find(|&i| class(i) == s.class)
                        .expect("declared class");
                    Some((t, classes[rng.below(classes.len())]))
                }
                None => None,
            }
        } else {
            None
        };
        let (target, reference) = if let Some(pair) = anchor {
            pair
        } else {
            let target = match rng.below(3) {
                1 if !equiv_classes.is_empty() => {
                    let name = &equiv_classes[rng.below(equiv_classes.len())];
                    (0..nc)
                        .find(|&i| &class(i) == name)
                        .expect("equivalences use declared classes")
                }
                2 if !stated.is_empty() => stated[rng.below(stated.len())].0,
                _ => rng.below(nc),
            };
            let reference = match rng.below(4) {
                1 if !member_classes.is_empty() => *member_classes
                    .iter()
                    .nth(rng.below(member_classes.len()))
                    .expect("in range"),
                2 if !products.is_empty() => products[rng.below(products.len())],
                3 if !stated.is_empty() => {
                    let earlier = stated[rng.below(stated.len())].1;
                    let related: Vec<usize> = (0..nc)
                        .filter(|&k| k != earlier && (reach[k][earlier] || reach[earlier][k]))
                        .collect();
                    if related.is_empty() {
                        rng.below(nc)
                    } else {
                        related[rng.below(related.len())]
                    }
                }
                _ => rng.below(nc),
            };
            (target, reference)
        };
        let interval = if !pool.is_empty() && rng.chance(1, 2) {
            pool[rng.below(pool.len())]
        } else {
            let d = rng.between(1, 20);
            let a = rng.between(0, d);
            let mut c = rng.between(0, d);
            if rng.chance(1, 2) {
                c = a;
            }
            let lo = Rational::new(a.min(c) as i64, d as i64).expect("d > 0");
            let hi = Rational::new(a.max(c) as i64, d as i64).expect("d > 0");
            Interval::new(lo, hi).expect("0 <= lo <= hi <= 1")
        };
        if seen.insert((target, reference)) {
            stated.push((target, reference));
            pool.push(interval);
            b.add(Fact::Stat(StatStatement {
                target: class(target),
                reference: class(reference),
                interval,
            }));
        }
    }

    let atomic_terms: Vec<&TermId> = terms.iter().filter(|(_, p)| !p).map(|(t, _)| t).collect();
    for c in 0..nc {
        if rng.chance(1, 8) {
            let members = atomic_terms
                .iter()
                .filter(|_| rng.chance(1, 2))
                .map(|t| (*t).clone())
                .collect();
            b.add(Fact::Extensional {
                class: class(c),
                members,
            });
        }
    }

    b.build()
        .unwrap_or_else(|e| panic!("generator produced an invalid knowledge base: {e:?}"))
}

/// Every `(term, class)` sentence of `kb`, sorted.
pub fn queryable_sentences(kb: &KnowledgeBase) -> Vec<Sentence> {
    kb.terms()
        .flat_map(|t| {
            kb.classes()
                .map(move |c| Sentence::new(t.clone(), c.clone()))
        })
        .collect()
}
