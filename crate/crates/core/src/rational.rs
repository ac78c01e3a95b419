//! Exact rational scalars and the symbolic `+∞` used for geometric measures.
//!
//! Rationals serialize as reduced strings: `"3"` when the denominator is one,
//! `"p/q"` otherwise. Infinity serializes as `"inf"`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Exact rational number used for every weight and coordinate.
pub type Q = Ratio<i64>;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// Shorthand for `n / d`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Canonical reduced string form of a rational.
pub fn fmt_q(value: &Q) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a short decimal such as `"2.5"`.
pub fn parse_q(text: &str) -> Result<Q, ParseError> {
    let text = text.trim();
    let bad = || ParseError::Rational(text.to_string());
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole.is_empty() || whole == "-" { 0 } else { whole.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().map_err(|_| bad())?;
        let magnitude = whole.abs() * scale + frac;
        let n = if negative { -magnitude } else { magnitude };
        return Ok(Q::new(n, scale));
    }
    text.parse::<i64>().map(Q::from_integer).map_err(|_| bad())
}

/// Least common multiple of the denominators, i.e. the smallest positive
/// integer scaling that clears every fraction.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Q>) -> i64 {
    values.into_iter().fold(1i64, |acc, v| acc.lcm(v.denom()))
}

/// A nonnegative extended rational: either finite or the symbolic `+∞`.
///
/// `Infinite` never takes part in arithmetic; it only compares above every
/// finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Q),
    Infinite,
}

impl Extended {
    pub fn zero() -> Self {
        Extended::Finite(Q::zero())
    }

    pub fn finite(self) -> Option<Q> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }
}

impl From<Q> for Extended {
    fn from(value: Q) -> Self {
        Extended::Finite(value)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => f.write_str(&fmt_q(v)),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        if text == "inf" {
            return Ok(Extended::Infinite);
        }
        parse_q(&text).map(Extended::Finite).map_err(serde::de::Error::custom)
    }
}

/// Absolute value, spelled out because `Signed` is not always in scope.
pub fn abs(value: Q) -> Q {
    value.abs()
}

/// `serde(with = "q_string")` for a single rational field.
pub mod q_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Q, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&fmt_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Q, D::Error> {
        let raw = serde_json::Value::deserialize(deserializer)?;
        value_to_q(&raw).map_err(serde::de::Error::custom)
    }

    pub(crate) fn value_to_q(raw: &serde_json::Value) -> Result<Q, String> {
        match raw {
            serde_json::Value::String(s) => parse_q(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Q::from_integer(i))
                } else {
                    parse_q(&n.to_string()).map_err(|e| e.to_string())
                }
            }
            other => Err(format!("expected rational, found {other}")),
        }
    }
}

/// `serde(with = "q_vec")` for a list of rationals.
pub mod q_vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[Q], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(deserializer)?;
        raw.iter().map(q_string::value_to_q).collect::<Result<_, _>>().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_reduced() {
        assert_eq!(fmt_q(&qf(6, 4)), "3/2");
        assert_eq!(fmt_q(&qf(-4, 2)), "-2");
        assert_eq!(fmt_q(&q(0)), "0");
    }

    #[test]
    fn parses_forms() {
        assert_eq!(parse_q("7/2").unwrap(), qf(7, 2));
        assert_eq!(parse_q(" -3 ").unwrap(), q(-3));
        assert_eq!(parse_q("2.5").unwrap(), qf(5, 2));
        assert_eq!(parse_q("-0.25").unwrap(), qf(-1, 4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn infinity_orders_above_finite() {
        assert!(Extended::Infinite > Extended::Finite(q(1_000_000)));
        assert_eq!(Extended::Infinite.to_string(), "inf");
    }

    #[test]
    fn common_denominator_clears() {
        let v = [qf(1, 2), qf(1, 3), q(4)];
        assert_eq!(common_denominator(&v), 6);
    }
}
