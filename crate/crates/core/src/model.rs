//! Identifiers, atomic sentences and the facts a knowledge base is made of.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::Interval;

/// Characters allowed in class and term identifiers.
pub fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '#' | '-')
}

pub fn is_valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_id_char)
}

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                $name(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_string())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }
    };
}

id_type!(
    /// Name of a class (a property, or a set of individuals).
    ClassId
);
id_type!(
    /// Name of an individual. Pair terms are named individuals too.
    TermId
);

/// "`subject` is a member of `class`".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sentence {
    pub subject: TermId,
    pub class: ClassId,
}

impl Sentence {
    pub fn new(subject: impl Into<TermId>, class: impl Into<ClassId>) -> Self {
        Sentence {
            subject: subject.into(),
            class: class.into(),
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.subject, self.class)
    }
}

/// `%(target, reference) ∈ interval`: the long-run frequency of `target`s
/// among `reference`s.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StatStatement {
    pub target: ClassId,
    pub reference: ClassId,
    pub interval: Interval,
}

/// One declaration or item of knowledge. `Display` renders the fact as the
/// knowledge-base directive that declares it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    Class(ClassId),
    Term(TermId),
    Pair {
        name: TermId,
        first: TermId,
        second: TermId,
    },
    Member {
        term: TermId,
        class: ClassId,
    },
    Subset {
        sub: ClassId,
        sup: ClassId,
    },
    Product {
        product: ClassId,
        left: ClassId,
        right: ClassId,
    },
    Sample {
        term: TermId,
        population: ClassId,
    },
    Subsample {
        sub: TermId,
        sup: TermId,
    },
    Equiv(Sentence, Sentence),
    Stat(StatStatement),
    Extensional {
        class: ClassId,
        members: Vec<TermId>,
    },
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Class(c) => write!(f, "class {c}"),
            Fact::Term(t) => write!(f, "term {t}"),
            Fact::Pair {
                name,
                first,
                second,
            } => write!(f, "pair {name} {first} {second}"),
            Fact::Member { term, class } => write!(f, "member {term} {class}"),
            Fact::Subset { sub, sup } => write!(f, "subset {sub} {sup}"),
            Fact::Product {
                product,
                left,
                right,
            } => write!(f, "product {product} = {left} x {right}"),
            Fact::Sample { term, population } => write!(f, "sample {term} {population}"),
            Fact::Subsample { sub, sup } => write!(f, "subsample {sub} {sup}"),
            Fact::Equiv(a, b) => write!(f, "equiv \"{a}\" \"{b}\""),
            Fact::Stat(s) => {
                if s.interval.is_point() {
                    write!(f, "stat {} {} = {}", s.target, s.reference, s.interval.lo())
                } else {
                    write!(
                        f,
                        "stat {} {} in [{}, {}]",
                        s.target,
                        s.reference,
                        s.interval.lo(),
                        s.interval.hi()
                    )
                }
            }
            Fact::Extensional { class, members } => {
                write!(f, "extensional {class} {{")?;
                for m in members {
                    write!(f, " {m}")?;
                }
                write!(f, " }}")
            }
        }
    }
}
