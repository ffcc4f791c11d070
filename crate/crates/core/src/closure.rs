//! Deductive closures over a knowledge base: equivalence classes of
//! sentences, the reflexive-transitive subset relation, and the memberships
//! an individual inherits through known subsets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::kb::{KbError, KnowledgeBase};
use crate::model::{ClassId, Fact, Sentence, TermId};

/// Disjoint sets over `0..n` with path compression and union by rank.
#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Partition of sentences into classes of known biconditionals.
///
/// Only sentences mentioned by some `equiv` fact are stored; any other
/// sentence is its own singleton class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalencePartition {
    representative: BTreeMap<Sentence, Sentence>,
    members: BTreeMap<Sentence, BTreeSet<Sentence>>,
}

impl EquivalencePartition {
    /// Canonical member of the sentence's class: its least element.
    pub fn representative(&self, s: &Sentence) -> Sentence {
        self.representative
            .get(s)
            .cloned()
            .unwrap_or_else(|| s.clone())
    }

    pub fn same_class(&self, a: &Sentence, b: &Sentence) -> bool {
        self.representative(a) == self.representative(b)
    }

    /// All sentences known to be equivalent to `s`, including `s`, sorted.
    pub fn class_of(&self, s: &Sentence) -> Vec<Sentence> {
        match self.representative.get(s) {
            Some(rep) => self.members[rep].iter().cloned().collect(),
            None => vec![s.clone()],
        }
    }

    /// Non-singleton classes, keyed by representative.
    pub fn classes(&self) -> impl Iterator<Item = &BTreeSet<Sentence>> {
        self.members.values()
    }
}

pub fn equivalence_classes(kb: &KnowledgeBase) -> EquivalencePartition {
    let mut index: HashMap<&Sentence, usize> = HashMap::new();
    let mut sentences: Vec<&Sentence> = Vec::new();
    for (a, b) in kb.equivalences() {
        for s in [a, b] {
            index.entry(s).or_insert_with(|| {
                sentences.push(s);
                sentences.len() - 1
            });
        }
    }
    let mut uf = UnionFind::new(sentences.len());
    for (a, b) in kb.equivalences() {
        uf.union(index[a], index[b]);
    }

    let mut groups: BTreeMap<usize, BTreeSet<Sentence>> = BTreeMap::new();
    for (i, s) in sentences.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().insert((*s).clone());
    }

    let mut partition = EquivalencePartition::default();
    for group in groups.into_values() {
        let rep = group.first().cloned().expect("groups are nonempty");
        for s in &group {
            partition.representative.insert(s.clone(), rep.clone());
        }
        partition.members.insert(rep, group);
    }
    partition
}

/// Reflexive-transitive closure of the declared subset facts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubsetClosure {
    supersets: BTreeMap<ClassId, BTreeSet<ClassId>>,
}

impl SubsetClosure {
    /// `sub ⊆ sup` is known. Every class is a subset of itself.
    pub fn contains(&self, sub: &ClassId, sup: &ClassId) -> bool {
        sub == sup
            || self
                .supersets
                .get(sub)
                .is_some_and(|sups| sups.contains(sup))
    }

    /// Known supersets of `class`, including itself.
    pub fn supersets_of(&self, class: &ClassId) -> impl Iterator<Item = &ClassId> {
        self.supersets.get(class).into_iter().flatten()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&ClassId, &ClassId)> {
        self.supersets
            .iter()
            .flat_map(|(sub, sups)| sups.iter().map(move |sup| (sub, sup)))
    }
}

/// Closes the declared subset facts. Fails if they form a cycle through
/// two or more distinct classes.
pub fn subset_closure(kb: &KnowledgeBase) -> Result<SubsetClosure, KbError> {
    let mut direct: BTreeMap<&ClassId, Vec<&ClassId>> = BTreeMap::new();
    for (sub, sup) in kb.subset_facts() {
        if sub != sup {
            direct.entry(sub).or_default().push(sup);
        }
    }

    if let Some(cycle) = find_cycle(kb, &direct) {
        let fact = Fact::Subset {
            sub: cycle[0].clone(),
            sup: cycle[1].clone(),
        };
        return Err(KbError::SubsetCycle { cycle, fact });
    }

    let mut supersets = BTreeMap::new();
    for class in kb.classes() {
        let mut reached: BTreeSet<ClassId> = BTreeSet::new();
        let mut stack = vec![class];
        while let Some(c) = stack.pop() {
            if reached.insert(c.clone()) {
                if let Some(next) = direct.get(c) {
                    stack.extend(next.iter().copied());
                }
            }
        }
        supersets.insert(class.clone(), reached);
    }
    Ok(SubsetClosure { supersets })
}

/// Depth-first search with colours. Returns the cycle as a closed path
/// `[c0, c1, ..., c0]`.
fn find_cycle(
    kb: &KnowledgeBase,
    direct: &BTreeMap<&ClassId, Vec<&ClassId>>,
) -> Option<Vec<ClassId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Colour {
        White,
        Grey,
        Black,
    }
    let mut colour: BTreeMap<&ClassId, Colour> = kb.classes().map(|c| (c, Colour::White)).collect();

    for root in kb.classes() {
        if colour[root] != Colour::White {
            continue;
        }
        // Stack of (node, next child index); `path` mirrors the grey nodes.
        let mut stack: Vec<(&ClassId, usize)> = vec![(root, 0)];
        colour.insert(root, Colour::Grey);
        while let Some((node, child)) = stack.last().copied() {
            let children = direct.get(node).map(Vec::as_slice).unwrap_or(&[]);
            if child < children.len() {
                stack.last_mut().expect("nonempty").1 += 1;
                let next = children[child];
                match colour[next] {
                    Colour::White => {
                        colour.insert(next, Colour::Grey);
                        stack.push((next, 0));
                    }
                    Colour::Grey => {
                        let start = stack
                            .iter()
                            .position(|(n, _)| *n == next)
                            .expect("grey nodes are on the stack");
                        let mut cycle: Vec<ClassId> =
                            stack[start..].iter().map(|(n, _)| (*n).clone()).collect();
                        cycle.push(next.clone());
                        return Some(cycle);
                    }
                    Colour::Black => {}
                }
            } else {
                colour.insert(node, Colour::Black);
                stack.pop();
            }
        }
    }
    None
}

/// Classes `term` is known to belong to: every declared membership, closed
/// upward through known subsets.
pub fn known_memberships(
    kb: &KnowledgeBase,
    closure: &SubsetClosure,
    term: &TermId,
) -> BTreeSet<ClassId> {
    kb.memberships()
        .filter(|(t, _)| *t == term)
        .flat_map(|(_, c)| closure.supersets_of(c).cloned())
        .collect()
}

/// Both closures, computed once per knowledge base.
#[derive(Debug, Clone)]
pub struct Closures {
    pub equivalence: EquivalencePartition,
    pub subsets: SubsetClosure,
}

impl Closures {
    pub fn compute(kb: &KnowledgeBase) -> Result<Self, KbError> {
        Ok(Closures {
            equivalence: equivalence_classes(kb),
            subsets: subset_closure(kb)?,
        })
    }
}
