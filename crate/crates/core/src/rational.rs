//! Exact rational numbers.
//!
//! Every frequency in a knowledge base is held as a reduced fraction. Decimal
//! literals are read as the exact fraction they denote, so `0.8` is `4/5` and
//! never a binary float.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("number `{0}` does not fit in 64-bit fractions")]
    Overflow(String),
}

/// A reduced fraction with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer/denom` in canonical form. Fails on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Result<Self, RationalError> {
        if denom == 0 {
            return Err(RationalError::ZeroDenominator(format!("{numer}/{denom}")));
        }
        if numer == i64::MIN || denom == i64::MIN {
            return Err(RationalError::Overflow(format!("{numer}/{denom}")));
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Always renders as `n/d`, including integers (`1/1`).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

fn parse_int(text: &str, whole: &str) -> Result<i64, RationalError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalError::Malformed(whole.to_string()));
    }
    text.parse::<i64>()
        .map_err(|_| RationalError::Overflow(whole.to_string()))
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `n`, `n/d` and decimal `i.f` (also `.f`), with an optional
    /// leading minus sign.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text.is_empty() {
            return Err(RationalError::Empty);
        }
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let value = if let Some((n, d)) = body.split_once('/') {
            let numer = parse_int(n, text)?;
            let denom = parse_int(d, text)?;
            if denom == 0 {
                return Err(RationalError::ZeroDenominator(text.to_string()));
            }
            Ratio::new(numer, denom)
        } else if let Some((int_part, frac_part)) = body.split_once('.') {
            if int_part.is_empty() && frac_part.is_empty() {
                return Err(RationalError::Malformed(text.to_string()));
            }
            let int_value = if int_part.is_empty() {
                0
            } else {
                parse_int(int_part, text)?
            };
            let frac_value = if frac_part.is_empty() {
                0
            } else {
                parse_int(frac_part, text)?
            };
            let scale = u32::try_from(frac_part.len())
                .ok()
                .and_then(|digits| 10i64.checked_pow(digits))
                .ok_or_else(|| RationalError::Overflow(text.to_string()))?;
            let numer = int_value
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_value))
                .ok_or_else(|| RationalError::Overflow(text.to_string()))?;
            Ratio::new(numer, scale)
        } else {
            Ratio::from_integer(parse_int(body, text)?)
        };
        Ok(Rational(if negative { -value } else { value }))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_fractions_in_reduced_form() {
        assert_eq!(r("2/4"), Rational::new(1, 2).unwrap());
        assert_eq!(r("14/55").to_fraction_string(), "14/55");
        assert_eq!(r("10/5").to_string(), "2");
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(r("0.8"), r("4/5"));
        assert_eq!(r("0.9"), r("9/10"));
        assert_eq!(r(".25"), r("1/4"));
        assert_eq!(r("1."), r("1"));
        assert_eq!(r("-0.5"), r("-1/2"));
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
        assert!("+1".parse::<Rational>().is_err());
        assert!("99999999999999999999".parse::<Rational>().is_err());
        assert!("0.00000000000000000001".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering_follows_value() {
        assert!(r("1/3") < r("0.34"));
        assert!(r("41/55") > r("0.745"));
        assert!(r("41/55") < r("0.7455"));
    }

    #[test]
    fn urn_compound_value_is_41_over_55() {
        let value = r("9/10") * r("4/5") + r("1/10") * r("14/55");
        assert_eq!(value, r("41/55"));
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let json = serde_json::to_string(&r("1")).unwrap();
        assert_eq!(json, "\"1/1\"");
        let back: Rational = serde_json::from_str("\"41/55\"").unwrap();
        assert_eq!(back, r("41/55"));
    }
}
