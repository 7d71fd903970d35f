use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};

/// An element of `Q ∪ {∞}` in the valuation (min-plus) convention.
///
/// Tropical addition is `min`, tropical multiplication is `+`; `Inf` is the
/// valuation of zero. The derived order places every finite value below `Inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropNum {
    Finite(Rational),
    Inf,
}

impl TropNum {
    pub fn zero() -> Self {
        TropNum::Finite(Rational::from_integer(0.into()))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropNum::Inf)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropNum::Finite(q) => Some(q),
            TropNum::Inf => None,
        }
    }

    /// Tropical sum `a ⊕ b = min(a, b)`.
    pub fn oplus(&self, other: &TropNum) -> TropNum {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product `a ⊙ b = a + b`.
    pub fn otimes(&self, other: &TropNum) -> TropNum {
        match (self, other) {
            (TropNum::Finite(a), TropNum::Finite(b)) => TropNum::Finite(a + b),
            _ => TropNum::Inf,
        }
    }
}

impl From<Rational> for TropNum {
    fn from(q: Rational) -> Self {
        TropNum::Finite(q)
    }
}

impl PartialOrd for TropNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropNum::Finite(a), TropNum::Finite(b)) => a.cmp(b),
            (TropNum::Finite(_), TropNum::Inf) => Ordering::Less,
            (TropNum::Inf, TropNum::Finite(_)) => Ordering::Greater,
            (TropNum::Inf, TropNum::Inf) => Ordering::Equal,
        }
    }
}

impl Add for TropNum {
    type Output = TropNum;
    fn add(self, rhs: TropNum) -> TropNum {
        self.otimes(&rhs)
    }
}

impl<'a> Add<&'a TropNum> for &'a TropNum {
    type Output = TropNum;
    fn add(self, rhs: &TropNum) -> TropNum {
        self.otimes(rhs)
    }
}

impl fmt::Display for TropNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropNum::Finite(q) => f.write_str(&format_rational(q)),
            TropNum::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for TropNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TropNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s.trim() == "inf" => Ok(TropNum::Inf),
            serde_json::Value::String(s) => parse_rational(s).map(TropNum::Finite).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_rational(&n.to_string()).map(TropNum::Finite).map_err(serde::de::Error::custom)
            }
            _ => Err(serde::de::Error::custom(format!("expected a rational or \"inf\", got {v}"))),
        }
    }
}

/// A value in the log (max-plus) convention: `Q ∪ {−∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LogNum {
    NegInf,
    Finite(Rational),
}

impl LogNum {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            LogNum::Finite(q) => Some(q),
            LogNum::NegInf => None,
        }
    }

    /// Switches to the valuation convention: `v = −log|·|`.
    pub fn to_valuation(&self) -> TropNum {
        match self {
            LogNum::Finite(q) => TropNum::Finite(-q.clone()),
            LogNum::NegInf => TropNum::Inf,
        }
    }

    pub fn from_valuation(v: &TropNum) -> LogNum {
        match v {
            TropNum::Finite(q) => LogNum::Finite(-q.clone()),
            TropNum::Inf => LogNum::NegInf,
        }
    }
}

impl PartialOrd for LogNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogNum {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogNum::Finite(a), LogNum::Finite(b)) => a.cmp(b),
            (LogNum::NegInf, LogNum::Finite(_)) => Ordering::Less,
            (LogNum::Finite(_), LogNum::NegInf) => Ordering::Greater,
            (LogNum::NegInf, LogNum::NegInf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for LogNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNum::Finite(q) => f.write_str(&format_rational(q)),
            LogNum::NegInf => f.write_str("-inf"),
        }
    }
}

impl Serialize for LogNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
