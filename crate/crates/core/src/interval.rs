//! Closed probability intervals and the orderings used to compare statistics.
//!
//! A point statistic `p` is the degenerate interval `[p, p]`, so exact and
//! approximate knowledge go through the same comparisons:
//!
//! * two intervals *differ* when neither contains the other;
//! * one is *stronger* than another when it is a strict subset of it;
//! * the *cover* of several intervals is their hull.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("interval lower bound {lo} exceeds upper bound {hi}")]
    Inverted { lo: Rational, hi: Rational },
    #[error("interval [{lo}, {hi}] leaves the unit range [0, 1]")]
    OutOfRange { lo: Rational, hi: Rational },
    #[error("cannot take the cover of no intervals")]
    EmptyCover,
    #[error("malformed interval `{0}`")]
    Malformed(String),
}

/// A closed subinterval `[lo, hi]` of `[0, 1]` with rational endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// The interval of total ignorance.
    pub const UNIT: Interval = Interval {
        lo: Rational::ZERO,
        hi: Rational::ONE,
    };

    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        if lo < Rational::ZERO || hi > Rational::ONE {
            return Err(IntervalError::OutOfRange { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(p: Rational) -> Result<Self, IntervalError> {
        Self::new(p, p)
    }

    pub fn lo(&self) -> Rational {
        self.lo
    }

    pub fn hi(&self) -> Rational {
        self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn contains(&self, value: Rational) -> bool {
        self.lo <= value && value <= self.hi
    }

    /// Neither interval is included in the other.
    pub fn differs(&self, other: &Interval) -> bool {
        !self.is_subset_of(other) && !other.is_subset_of(self)
    }

    /// `self` is a strict subset of `other`.
    pub fn stronger(&self, other: &Interval) -> bool {
        self.is_subset_of(other) && self != other
    }

    /// Smallest interval containing every member of `intervals`.
    pub fn cover<'a, I>(intervals: I) -> Result<Interval, IntervalError>
    where
        I: IntoIterator<Item = &'a Interval>,
    {
        intervals
            .into_iter()
            .copied()
            .reduce(|acc, x| Interval {
                lo: acc.lo.min(x.lo),
                hi: acc.hi.max(x.hi),
            })
            .ok_or(IntervalError::EmptyCover)
    }
}

impl fmt::Display for Interval {
    /// Point intervals print as the bare value, others as `[lo, hi]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    /// Reads back what `Display` prints: a bare value or `[lo, hi]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let malformed = || IntervalError::Malformed(text.to_string());
        let value = |v: &str| v.trim().parse::<Rational>().map_err(|_| malformed());
        match text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            Some(body) => {
                let (lo, hi) = body.split_once(',').ok_or_else(malformed)?;
                Interval::new(value(lo)?, value(hi)?)
            }
            None => Interval::point(value(text)?),
        }
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: Rational,
            hi: Rational,
        }
        let raw = Raw::deserialize(deserializer)?;
        Interval::new(raw.lo, raw.hi).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: &str, hi: &str) -> Interval {
        Interval::new(lo.parse().unwrap(), hi.parse().unwrap()).unwrap()
    }

    #[test]
    fn display_parses_back() {
        for text in ["4/5", "[1/5, 9/10]", "0", "1", "[0, 1]"] {
            let parsed: Interval = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text);
        }
        assert!("[1/2]".parse::<Interval>().is_err());
        assert!("[3/5, 2/5]".parse::<Interval>().is_err());
        assert!("3/2".parse::<Interval>().is_err());
    }

    #[test]
    fn construction() {
        assert_eq!(iv("1/2", "1/2").to_string(), "1/2");
        assert_eq!(iv("2/5", "3/5").to_string(), "[2/5, 3/5]");
        let inverted = Interval::new("3/5".parse().unwrap(), "2/5".parse().unwrap());
        assert!(matches!(inverted, Err(IntervalError::Inverted { .. })));
        let negative = Interval::new("-1/5".parse().unwrap(), "2/5".parse().unwrap());
        assert!(matches!(negative, Err(IntervalError::OutOfRange { .. })));
        let above = Interval::new("1/5".parse().unwrap(), "6/5".parse().unwrap());
        assert!(matches!(above, Err(IntervalError::OutOfRange { .. })));
    }

    #[test]
    fn differs_examples() {
        assert!(iv("2/5", "3/5").differs(&iv("1/2", "7/10")));
        assert!(!iv("2/5", "3/5").differs(&iv("9/20", "11/20")));
        assert!(iv("1/2", "1/2").differs(&iv("4/5", "4/5")));
    }

    #[test]
    fn stronger_examples() {
        assert!(iv("9/20", "11/20").stronger(&iv("2/5", "3/5")));
        assert!(!iv("2/5", "3/5").stronger(&iv("2/5", "3/5")));
        assert!(iv("1/2", "1/2").stronger(&Interval::UNIT));
        assert!(!Interval::UNIT.stronger(&iv("0", "1")));
    }

    #[test]
    fn cover_examples() {
        let a = [iv("1/5", "1/5"), iv("9/10", "9/10")];
        assert_eq!(Interval::cover(&a).unwrap(), iv("1/5", "9/10"));
        assert_eq!(
            Interval::cover(&[iv("4/5", "4/5")]).unwrap(),
            iv("4/5", "4/5")
        );
        let b = [iv("2/5", "3/5"), iv("1/2", "7/10")];
        assert_eq!(Interval::cover(&b).unwrap(), iv("2/5", "7/10"));
        assert_eq!(Interval::cover(&[]), Err(IntervalError::EmptyCover));
    }

    fn arb_interval() -> impl Strategy<Value = Interval> {
        (1i64..=20)
            .prop_flat_map(|d| (0..=d, 0..=d, Just(d)))
            .prop_map(|(a, b, d)| {
                let (lo, hi) = (a.min(b), a.max(b));
                Interval::new(Rational::new(lo, d).unwrap(), Rational::new(hi, d).unwrap()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn trichotomy(x in arb_interval(), y in arb_interval()) {
            let cases = [x.is_subset_of(&y), y.is_subset_of(&x), x.differs(&y)];
            prop_assert!(cases.iter().any(|c| *c));
            prop_assert_eq!(x.differs(&y), !cases[0] && !cases[1]);
        }

        #[test]
        fn stronger_is_strict_partial_order(
            x in arb_interval(), y in arb_interval(), z in arb_interval()
        ) {
            prop_assert!(!x.stronger(&x));
            prop_assert!(!(x.stronger(&y) && y.stronger(&x)));
            if x.stronger(&y) && y.stronger(&z) {
                prop_assert!(x.stronger(&z));
            }
            if x.stronger(&y) {
                prop_assert!(!x.differs(&y));
            }
        }

        #[test]
        fn cover_contains_members_and_ignores_order(
            mut xs in proptest::collection::vec(arb_interval(), 1..8)
        ) {
            let hull = Interval::cover(&xs).unwrap();
            for x in &xs {
                prop_assert!(x.is_subset_of(&hull));
            }
            prop_assert_eq!(Interval::cover(&[hull, hull]).unwrap(), hull);
            xs.reverse();
            prop_assert_eq!(Interval::cover(&xs).unwrap(), hull);
        }
    }
}
