//! The knowledge base: an immutable, validated set of facts.
//!
//! A [`KnowledgeBase`] can only be obtained from [`KbBuilder::build`] (or the
//! text parser, which uses the builder), so every instance satisfies:
//!
//! * every referenced class and term is declared, and class and term names
//!   do not collide;
//! * there is at most one statistic per `(target, reference)` pair;
//! * the declared subset relation has no cycle through distinct classes;
//! * a class is the product in at most one product fact, and everything
//!   known to belong to a product class is a pair term;
//! * subsample facts relate declared samples.
//!
//! Facts are stored in ordered sets, so two knowledge bases holding the same
//! facts compare equal regardless of declaration order.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::closure::{self, SubsetClosure};
use crate::interval::Interval;
use crate::model::{is_valid_id, ClassId, Fact, Sentence, StatStatement, TermId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("invalid identifier `{id}` in `{fact}`")]
    InvalidId { id: String, fact: Fact },
    #[error("undeclared class `{id}` in `{fact}`")]
    UndeclaredClass { id: ClassId, fact: Fact },
    #[error("undeclared term `{id}` in `{fact}`")]
    UndeclaredTerm { id: TermId, fact: Fact },
    #[error("`{id}` is declared twice with different meanings (`{fact}`)")]
    Redeclared { id: String, fact: Fact },
    #[error("pair `{name}` contains itself")]
    CyclicPair { name: TermId, fact: Fact },
    #[error("conflicting statistics for %({target}, {reference}): {first} and {second}")]
    ConflictingStat {
        target: ClassId,
        reference: ClassId,
        first: Interval,
        second: Interval,
        fact: Fact,
    },
    #[error("subset cycle through {}", display_cycle(.cycle))]
    SubsetCycle { cycle: Vec<ClassId>, fact: Fact },
    #[error("class `{product}` is declared as a product more than once")]
    DuplicateProduct { product: ClassId, fact: Fact },
    #[error("`{term}` belongs to product class `{product}` but is not a pair term")]
    NonPairProductMember {
        term: TermId,
        product: ClassId,
        fact: Fact,
    },
    #[error("`{term}` is used as a sample but has no `sample` fact")]
    NotASample { term: TermId, fact: Fact },
    #[error("sample `{term}` cannot be a subsample of itself")]
    SelfSubsample { term: TermId, fact: Fact },
    #[error("class `{class}` is enumerated more than once")]
    DuplicateExtension { class: ClassId, fact: Fact },
}

fn display_cycle(cycle: &[ClassId]) -> String {
    cycle
        .iter()
        .map(ClassId::as_str)
        .collect::<Vec<_>>()
        .join(" ⊆ ")
}

impl KbError {
    /// The fact that triggered the error.
    pub fn fact(&self) -> &Fact {
        match self {
            KbError::InvalidId { fact, .. }
            | KbError::UndeclaredClass { fact, .. }
            | KbError::UndeclaredTerm { fact, .. }
            | KbError::Redeclared { fact, .. }
            | KbError::CyclicPair { fact, .. }
            | KbError::ConflictingStat { fact, .. }
            | KbError::SubsetCycle { fact, .. }
            | KbError::DuplicateProduct { fact, .. }
            | KbError::NonPairProductMember { fact, .. }
            | KbError::NotASample { fact, .. }
            | KbError::SelfSubsample { fact, .. }
            | KbError::DuplicateExtension { fact, .. } => fact,
        }
    }

    /// True for errors where the facts are well-formed but contradict each
    /// other, as opposed to naming or reference mistakes.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            KbError::ConflictingStat { .. }
                | KbError::SubsetCycle { .. }
                | KbError::DuplicateProduct { .. }
                | KbError::NonPairProductMember { .. }
                | KbError::CyclicPair { .. }
                | KbError::DuplicateExtension { .. }
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub(crate) classes: BTreeSet<ClassId>,
    pub(crate) terms: BTreeSet<TermId>,
    pub(crate) pairs: BTreeMap<TermId, (TermId, TermId)>,
    pub(crate) members: BTreeSet<(TermId, ClassId)>,
    pub(crate) subsets: BTreeSet<(ClassId, ClassId)>,
    pub(crate) products: BTreeMap<ClassId, (ClassId, ClassId)>,
    pub(crate) samples: BTreeSet<(TermId, ClassId)>,
    pub(crate) subsamples: BTreeSet<(TermId, TermId)>,
    pub(crate) equivalences: BTreeSet<(Sentence, Sentence)>,
    pub(crate) stats: BTreeMap<(ClassId, ClassId), Interval>,
    pub(crate) extensions: BTreeMap<ClassId, BTreeSet<TermId>>,
}

impl KnowledgeBase {
    pub fn builder() -> KbBuilder {
        KbBuilder::default()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.terms.is_empty() && self.pairs.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassId> {
        self.classes.iter()
    }

    pub fn is_class(&self, id: &ClassId) -> bool {
        self.classes.contains(id)
    }

    /// Atomic and pair terms, in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = &TermId> {
        let mut all: Vec<&TermId> = self.terms.iter().chain(self.pairs.keys()).collect();
        all.sort();
        all.into_iter()
    }

    pub fn atomic_terms(&self) -> impl Iterator<Item = &TermId> {
        self.terms.iter()
    }

    pub fn is_term(&self, id: &TermId) -> bool {
        self.terms.contains(id) || self.pairs.contains_key(id)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len() + self.pairs.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Components of a pair term.
    pub fn pair(&self, id: &TermId) -> Option<(&TermId, &TermId)> {
        self.pairs.get(id).map(|(a, b)| (a, b))
    }

    pub fn is_pair(&self, id: &TermId) -> bool {
        self.pairs.contains_key(id)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&TermId, &TermId, &TermId)> {
        self.pairs.iter().map(|(n, (a, b))| (n, a, b))
    }

    /// Declared (not derived) memberships.
    pub fn memberships(&self) -> impl Iterator<Item = (&TermId, &ClassId)> {
        self.members.iter().map(|(t, c)| (t, c))
    }

    pub fn subset_facts(&self) -> impl Iterator<Item = (&ClassId, &ClassId)> {
        self.subsets.iter().map(|(a, b)| (a, b))
    }

    pub fn products(&self) -> impl Iterator<Item = (&ClassId, &ClassId, &ClassId)> {
        self.products.iter().map(|(p, (l, r))| (p, l, r))
    }

    pub fn product_factors(&self, product: &ClassId) -> Option<(&ClassId, &ClassId)> {
        self.products.get(product).map(|(l, r)| (l, r))
    }

    pub fn samples(&self) -> impl Iterator<Item = (&TermId, &ClassId)> {
        self.samples.iter().map(|(t, c)| (t, c))
    }

    pub fn is_sample(&self, term: &TermId) -> bool {
        self.samples.iter().any(|(t, _)| t == term)
    }

    pub fn subsamples(&self) -> impl Iterator<Item = (&TermId, &TermId)> {
        self.subsamples.iter().map(|(a, b)| (a, b))
    }

    /// Whether `subsample sub sup` is declared.
    pub fn has_subsample(&self, sub: &TermId, sup: &TermId) -> bool {
        self.subsamples.contains(&(sub.clone(), sup.clone()))
    }

    pub fn equivalences(&self) -> impl Iterator<Item = (&Sentence, &Sentence)> {
        self.equivalences.iter().map(|(a, b)| (a, b))
    }

    pub fn stats(&self) -> impl Iterator<Item = StatStatement> + '_ {
        self.stats.iter().map(|((t, r), i)| StatStatement {
            target: t.clone(),
            reference: r.clone(),
            interval: *i,
        })
    }

    pub fn stat(&self, target: &ClassId, reference: &ClassId) -> Option<Interval> {
        self.stats
            .get(&(target.clone(), reference.clone()))
            .copied()
    }

    pub fn stat_count(&self) -> usize {
        self.stats.len()
    }

    pub fn extension(&self, class: &ClassId) -> Option<&BTreeSet<TermId>> {
        self.extensions.get(class)
    }

    pub fn extensions(&self) -> impl Iterator<Item = (&ClassId, &BTreeSet<TermId>)> {
        self.extensions.iter()
    }

    /// Every fact in canonical order: declarations first, then memberships,
    /// subsets, products, samples, subsamples, equivalences, statistics and
    /// enumerations, each group sorted.
    pub fn facts(&self) -> Vec<Fact> {
        let mut out = Vec::new();
        out.extend(self.classes.iter().cloned().map(Fact::Class));
        out.extend(self.terms.iter().cloned().map(Fact::Term));
        out.extend(self.pairs.iter().map(|(name, (first, second))| Fact::Pair {
            name: name.clone(),
            first: first.clone(),
            second: second.clone(),
        }));
        out.extend(self.members.iter().map(|(term, class)| Fact::Member {
            term: term.clone(),
            class: class.clone(),
        }));
        out.extend(self.subsets.iter().map(|(sub, sup)| Fact::Subset {
            sub: sub.clone(),
            sup: sup.clone(),
        }));
        out.extend(
            self.products
                .iter()
                .map(|(product, (left, right))| Fact::Product {
                    product: product.clone(),
                    left: left.clone(),
                    right: right.clone(),
                }),
        );
        out.extend(self.samples.iter().map(|(term, population)| Fact::Sample {
            term: term.clone(),
            population: population.clone(),
        }));
        out.extend(self.subsamples.iter().map(|(sub, sup)| Fact::Subsample {
            sub: sub.clone(),
            sup: sup.clone(),
        }));
        out.extend(
            self.equivalences
                .iter()
                .map(|(a, b)| Fact::Equiv(a.clone(), b.clone())),
        );
        out.extend(self.stats().map(Fact::Stat));
        out.extend(
            self.extensions
                .iter()
                .map(|(class, members)| Fact::Extensional {
                    class: class.clone(),
                    members: members.iter().cloned().collect(),
                }),
        );
        out
    }
}

/// Collects facts in any order and validates them all at once.
#[derive(Debug, Clone, Default)]
pub struct KbBuilder {
    facts: Vec<Fact>,
}

impl KbBuilder {
    pub fn add(&mut self, fact: Fact) -> &mut Self {
        self.facts.push(fact);
        self
    }

    pub fn class(&mut self, id: &str) -> &mut Self {
        self.add(Fact::Class(id.into()))
    }

    pub fn term(&mut self, id: &str) -> &mut Self {
        self.add(Fact::Term(id.into()))
    }

    pub fn pair(&mut self, name: &str, first: &str, second: &str) -> &mut Self {
        self.add(Fact::Pair {
            name: name.into(),
            first: first.into(),
            second: second.into(),
        })
    }

    pub fn member(&mut self, term: &str, class: &str) -> &mut Self {
        self.add(Fact::Member {
            term: term.into(),
            class: class.into(),
        })
    }

    pub fn subset(&mut self, sub: &str, sup: &str) -> &mut Self {
        self.add(Fact::Subset {
            sub: sub.into(),
            sup: sup.into(),
        })
    }

    pub fn product(&mut self, product: &str, left: &str, right: &str) -> &mut Self {
        self.add(Fact::Product {
            product: product.into(),
            left: left.into(),
            right: right.into(),
        })
    }

    pub fn sample(&mut self, term: &str, population: &str) -> &mut Self {
        self.add(Fact::Sample {
            term: term.into(),
            population: population.into(),
        })
    }

    pub fn subsample(&mut self, sub: &str, sup: &str) -> &mut Self {
        self.add(Fact::Subsample {
            sub: sub.into(),
            sup: sup.into(),
        })
    }

    pub fn equiv(&mut self, a: Sentence, b: Sentence) -> &mut Self {
        self.add(Fact::Equiv(a, b))
    }

    pub fn stat(&mut self, target: &str, reference: &str, interval: Interval) -> &mut Self {
        self.add(Fact::Stat(StatStatement {
            target: target.into(),
            reference: reference.into(),
            interval,
        }))
    }

    pub fn extensional(&mut self, class: &str, members: &[&str]) -> &mut Self {
        self.add(Fact::Extensional {
            class: class.into(),
            members: members.iter().map(|m| TermId::from(*m)).collect(),
        })
    }

    pub fn build(&self) -> Result<KnowledgeBase, Vec<KbError>> {
        Validator::default().run(&self.facts)
    }
}

#[derive(Default)]
struct Validator {
    kb: KnowledgeBase,
    errors: Vec<KbError>,
}

impl Validator {
    fn run(mut self, facts: &[Fact]) -> Result<KnowledgeBase, Vec<KbError>> {
        for fact in facts {
            self.declare(fact);
        }
        for fact in facts {
            self.relate(fact);
        }
        if self.errors.is_empty() {
            self.check_pairs();
        }
        if self.errors.is_empty() {
            self.check_subsets_and_products(facts);
        }
        if self.errors.is_empty() {
            Ok(self.kb)
        } else {
            Err(self.errors)
        }
    }

    fn check_id(&mut self, id: &str, fact: &Fact) -> bool {
        if is_valid_id(id) {
            true
        } else {
            self.errors.push(KbError::InvalidId {
                id: id.to_string(),
                fact: fact.clone(),
            });
            false
        }
    }

    fn declare(&mut self, fact: &Fact) {
        match fact {
            Fact::Class(c) => {
                if !self.check_id(c.as_str(), fact) {
                    return;
                }
                let as_term = TermId::new(c.as_str());
                if self.kb.is_term(&as_term) {
                    self.redeclared(c.as_str(), fact);
                } else {
                    self.kb.classes.insert(c.clone());
                }
            }
            Fact::Term(t) => {
                if !self.check_id(t.as_str(), fact) {
                    return;
                }
                if self.kb.classes.contains(&ClassId::new(t.as_str()))
                    || self.kb.pairs.contains_key(t)
                {
                    self.redeclared(t.as_str(), fact);
                } else {
                    self.kb.terms.insert(t.clone());
                }
            }
            Fact::Pair {
                name,
                first,
                second,
            } => {
                if !self.check_id(name.as_str(), fact) {
                    return;
                }
                let clash = self.kb.classes.contains(&ClassId::new(name.as_str()))
                    || self.kb.terms.contains(name)
                    || self
                        .kb
                        .pairs
                        .get(name)
                        .is_some_and(|existing| existing != &(first.clone(), second.clone()));
                if clash {
                    self.redeclared(name.as_str(), fact);
                } else {
                    self.kb
                        .pairs
                        .insert(name.clone(), (first.clone(), second.clone()));
                }
            }
            _ => {}
        }
    }

    fn redeclared(&mut self, id: &str, fact: &Fact) {
        self.errors.push(KbError::Redeclared {
            id: id.to_string(),
            fact: fact.clone(),
        });
    }

    fn need_class(&mut self, id: &ClassId, fact: &Fact) -> bool {
        if self.kb.classes.contains(id) {
            true
        } else {
            self.errors.push(KbError::UndeclaredClass {
                id: id.clone(),
                fact: fact.clone(),
            });
            false
        }
    }

    fn need_term(&mut self, id: &TermId, fact: &Fact) -> bool {
        if self.kb.is_term(id) {
            true
        } else {
            self.errors.push(KbError::UndeclaredTerm {
                id: id.clone(),
                fact: fact.clone(),
            });
            false
        }
    }

    fn need_sentence(&mut self, s: &Sentence, fact: &Fact) -> bool {
        let term_ok = self.need_term(&s.subject, fact);
        let class_ok = self.need_class(&s.class, fact);
        term_ok && class_ok
    }

    fn relate(&mut self, fact: &Fact) {
        match fact {
            Fact::Class(_) | Fact::Term(_) => {}
            Fact::Pair { first, second, .. } => {
                self.need_term(first, fact);
                self.need_term(second, fact);
            }
            Fact::Member { term, class } => {
                if self.need_term(term, fact) & self.need_class(class, fact) {
                    self.kb.members.insert((term.clone(), class.clone()));
                }
            }
            Fact::Subset { sub, sup } => {
                if self.need_class(sub, fact) & self.need_class(sup, fact) {
                    self.kb.subsets.insert((sub.clone(), sup.clone()));
                }
            }
            Fact::Product {
                product,
                left,
                right,
            } => {
                let ok = self.need_class(product, fact)
                    & self.need_class(left, fact)
                    & self.need_class(right, fact);
                if !ok {
                    return;
                }
                let factors = (left.clone(), right.clone());
                match self.kb.products.get(product) {
                    Some(existing) if existing != &factors => {
                        self.errors.push(KbError::DuplicateProduct {
                            product: product.clone(),
                            fact: fact.clone(),
                        });
                    }
                    _ => {
                        self.kb.products.insert(product.clone(), factors);
                    }
                }
            }
            Fact::Sample { term, population } => {
                if self.need_term(term, fact) & self.need_class(population, fact) {
                    self.kb.samples.insert((term.clone(), population.clone()));
                }
            }
            Fact::Subsample { .. } => {
                // Checked after all sample facts are known.
            }
            Fact::Equiv(a, b) => {
                if self.need_sentence(a, fact) & self.need_sentence(b, fact) {
                    let key = if a <= b {
                        (a.clone(), b.clone())
                    } else {
                        (b.clone(), a.clone())
                    };
                    self.kb.equivalences.insert(key);
                }
            }
            Fact::Stat(s) => {
                if !(self.need_class(&s.target, fact) & self.need_class(&s.reference, fact)) {
                    return;
                }
                let key = (s.target.clone(), s.reference.clone());
                match self.kb.stats.get(&key) {
                    Some(existing) if *existing != s.interval => {
                        self.errors.push(KbError::ConflictingStat {
                            target: s.target.clone(),
                            reference: s.reference.clone(),
                            first: *existing,
                            second: s.interval,
                            fact: fact.clone(),
                        });
                    }
                    _ => {
                        self.kb.stats.insert(key, s.interval);
                    }
                }
            }
            Fact::Extensional { class, members } => {
                let mut ok = self.need_class(class, fact);
                for m in members {
                    ok &= self.need_term(m, fact);
                }
                if !ok {
                    return;
                }
                let set: BTreeSet<TermId> = members.iter().cloned().collect();
                match self.kb.extensions.get(class) {
                    Some(existing) if existing != &set => {
                        self.errors.push(KbError::DuplicateExtension {
                            class: class.clone(),
                            fact: fact.clone(),
                        });
                    }
                    _ => {
                        self.kb.extensions.insert(class.clone(), set);
                    }
                }
            }
        }
    }

    /// Pairs must not contain themselves, directly or through nesting.
    fn check_pairs(&mut self) {
        for (name, (first, second)) in &self.kb.pairs {
            let mut stack = vec![first, second];
            let mut seen = BTreeSet::new();
            while let Some(t) = stack.pop() {
                if t == name {
                    self.errors.push(KbError::CyclicPair {
                        name: name.clone(),
                        fact: Fact::Pair {
                            name: name.clone(),
                            first: first.clone(),
                            second: second.clone(),
                        },
                    });
                    break;
                }
                if seen.insert(t) {
                    if let Some((a, b)) = self.kb.pairs.get(t) {
                        stack.push(a);
                        stack.push(b);
                    }
                }
            }
        }
    }

    fn check_subsets_and_products(&mut self, facts: &[Fact]) {
        for fact in facts {
            if let Fact::Subsample { sub, sup } = fact {
                if !(self.need_term(sub, fact) & self.need_term(sup, fact)) {
                    continue;
                }
                for t in [sub, sup] {
                    if !self.kb.is_sample(t) {
                        self.errors.push(KbError::NotASample {
                            term: t.clone(),
                            fact: fact.clone(),
                        });
                    }
                }
                if sub == sup {
                    self.errors.push(KbError::SelfSubsample {
                        term: sub.clone(),
                        fact: fact.clone(),
                    });
                } else {
                    self.kb.subsamples.insert((sub.clone(), sup.clone()));
                }
            }
        }

        let closure = match closure::subset_closure(&self.kb) {
            Ok(c) => c,
            Err(e) => {
                self.errors.push(e);
                return;
            }
        };
        self.check_product_members(&closure);
    }

    fn check_product_members(&mut self, closure: &SubsetClosure) {
        for (term, class) in &self.kb.members {
            if self.kb.pairs.contains_key(term) {
                continue;
            }
            for product in self.kb.products.keys() {
                if closure.contains(class, product) {
                    self.errors.push(KbError::NonPairProductMember {
                        term: term.clone(),
                        product: product.clone(),
                        fact: Fact::Member {
                            term: term.clone(),
                            class: class.clone(),
                        },
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn point(s: &str) -> Interval {
        Interval::point(s.parse::<Rational>().unwrap()).unwrap()
    }

    #[test]
    fn declaration_order_does_not_matter() {
        let a = KnowledgeBase::builder()
            .member("tweety", "Penguin")
            .subset("Penguin", "Bird")
            .class("Bird")
            .class("Penguin")
            .term("tweety")
            .build()
            .unwrap();
        let b = KnowledgeBase::builder()
            .class("Penguin")
            .class("Bird")
            .term("tweety")
            .subset("Penguin", "Bird")
            .member("tweety", "Penguin")
            .build()
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn undeclared_ids_are_reported() {
        let errors = KnowledgeBase::builder()
            .class("Bird")
            .member("ghost", "Bird")
            .build()
            .unwrap_err();
        assert!(matches!(&errors[0], KbError::UndeclaredTerm { id, .. } if id.as_str() == "ghost"));
        assert!(!errors[0].is_inconsistency());
    }

    #[test]
    fn conflicting_stats_are_an_inconsistency() {
        let errors = KnowledgeBase::builder()
            .class("Black")
            .class("Room")
            .stat("Black", "Room", point("1/2"))
            .stat("Black", "Room", point("4/5"))
            .build()
            .unwrap_err();
        assert!(matches!(errors[0], KbError::ConflictingStat { .. }));
        assert!(errors[0].is_inconsistency());
    }

    #[test]
    fn identical_duplicate_stats_are_fine() {
        let kb = KnowledgeBase::builder()
            .class("Black")
            .class("Room")
            .stat("Black", "Room", point("1/2"))
            .stat("Black", "Room", point("0.5"))
            .build()
            .unwrap();
        assert_eq!(kb.stat_count(), 1);
    }

    #[test]
    fn subset_cycles_are_rejected() {
        let errors = KnowledgeBase::builder()
            .class("A")
            .class("B")
            .class("C")
            .subset("A", "B")
            .subset("B", "C")
            .subset("C", "A")
            .build()
            .unwrap_err();
        assert!(matches!(errors[0], KbError::SubsetCycle { .. }));
    }

    #[test]
    fn product_rules() {
        let errors = KnowledgeBase::builder()
            .class("P")
            .class("A")
            .class("B")
            .class("C")
            .product("P", "A", "B")
            .product("P", "A", "C")
            .build()
            .unwrap_err();
        assert!(matches!(errors[0], KbError::DuplicateProduct { .. }));

        let errors = KnowledgeBase::builder()
            .class("P")
            .class("Sub")
            .class("A")
            .class("B")
            .term("x")
            .product("P", "A", "B")
            .subset("Sub", "P")
            .member("x", "Sub")
            .build()
            .unwrap_err();
        assert!(matches!(errors[0], KbError::NonPairProductMember { .. }));

        KnowledgeBase::builder()
            .class("P")
            .class("Sub")
            .class("A")
            .class("B")
            .term("a")
            .term("b")
            .pair("x", "a", "b")
            .product("P", "A", "B")
            .subset("Sub", "P")
            .member("x", "Sub")
            .build()
            .unwrap();
    }

    #[test]
    fn names_are_unique_across_kinds() {
        let errors = KnowledgeBase::builder()
            .class("x")
            .term("x")
            .build()
            .unwrap_err();
        assert!(matches!(errors[0], KbError::Redeclared { .. }));
        let errors = KnowledgeBase::builder()
            .term("a")
            .pair("p", "p", "a")
            .build()
            .unwrap_err();
        assert!(matches!(errors[0], KbError::CyclicPair { .. }));
    }

    #[test]
    fn subsamples_need_samples() {
        let errors = KnowledgeBase::builder()
            .class("Pop")
            .term("s1")
            .term("s2")
            .sample("s1", "Pop")
            .subsample("s1", "s2")
            .build()
            .unwrap_err();
        assert!(matches!(&errors[0], KbError::NotASample { term, .. } if term.as_str() == "s2"));
    }

    #[test]
    fn equivalences_are_stored_symmetrically() {
        let s = Sentence::new("a", "C");
        let t = Sentence::new("b", "D");
        let build = |x: &Sentence, y: &Sentence| {
            KnowledgeBase::builder()
                .class("C")
                .class("D")
                .term("a")
                .term("b")
                .equiv(x.clone(), y.clone())
                .build()
                .unwrap()
        };
        assert_eq!(build(&s, &t), build(&t, &s));
    }
}
