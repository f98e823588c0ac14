//! Coin amounts and extended reals.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Sub};

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// A coin amount in the smallest indivisible unit.
///
/// Budget feasibility is decided on these integers so that sums of channel
/// costs never drift.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coins(pub u64);

/// Largest amount that survives a round trip through an `f64` JSON number.
const MAX_EXACT: f64 = 9_007_199_254_740_992.0;

impl Coins {
    pub const ZERO: Coins = Coins(0);

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// Parses a JSON-style number; it must be finite, non-negative and integral.
    pub fn from_f64(value: f64) -> Result<Coins, String> {
        if !value.is_finite() {
            return Err(format!("{value} is not a finite amount"));
        }
        if value < 0.0 {
            return Err(format!("{value} is negative"));
        }
        if value.fract() != 0.0 {
            return Err(format!("{value} is not a whole number of units"));
        }
        if value > MAX_EXACT {
            return Err(format!("{value} is too large"));
        }
        Ok(Coins(value as u64))
    }

    pub fn checked_add(self, other: Coins) -> Option<Coins> {
        self.0.checked_add(other.0).map(Coins)
    }
}

impl Add for Coins {
    type Output = Coins;
    fn add(self, rhs: Coins) -> Coins {
        Coins(self.0 + rhs.0)
    }
}

impl Sum for Coins {
    fn sum<I: Iterator<Item = Coins>>(iter: I) -> Coins {
        iter.fold(Coins::ZERO, Add::add)
    }
}

impl fmt::Display for Coins {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for Coins {
    fn from(v: u64) -> Self {
        Coins(v)
    }
}

impl Serialize for Coins {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

impl<'de> Deserialize<'de> for Coins {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        Coins::from_f64(v).map_err(de::Error::custom)
    }
}

/// A real number extended with both infinities.
///
/// Utilities of disconnected nodes are `NegInf`; marginal gains out of a
/// disconnected state are `PosInf`. Arithmetic never produces NaN: the
/// undefined forms `inf - inf` resolve toward the left operand.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    pub fn from_f64(v: f64) -> ExtReal {
        if v == f64::INFINITY {
            ExtReal::PosInf
        } else if v == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            assert!(!v.is_nan(), "NaN is not an extended real");
            ExtReal::Finite(v)
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Lossy view as `f64`, mapping the infinities onto IEEE infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    fn rank(self) -> u8 {
        match self {
            ExtReal::NegInf => 0,
            ExtReal::Finite(_) => 1,
            ExtReal::PosInf => 2,
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Add<f64> for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: f64) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::from_f64(v + rhs),
            other => other,
        }
    }
}

impl Sub<f64> for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: f64) -> ExtReal {
        self + (-rhs)
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::from_f64(a - b),
            (ExtReal::Finite(_), ExtReal::NegInf) => ExtReal::PosInf,
            (ExtReal::Finite(_), ExtReal::PosInf) => ExtReal::NegInf,
            (lhs, _) => lhs,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::from_f64(v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(v) => v.fmt(f),
            ExtReal::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::NegInf => s.serialize_str("-inf"),
            ExtReal::PosInf => s.serialize_str("inf"),
        }
    }
}

/// Serializes an `f64` that may be infinite as a number or `"inf"`/`"-inf"`.
pub(crate) fn serialize_maybe_inf<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    ExtReal::from_f64(*v).serialize(s)
}
