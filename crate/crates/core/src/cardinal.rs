//! Symbolic cardinal numbers: naturals plus a finite ladder of alephs.
//!
//! Only the operations needed to decide design existence are provided. Sums and
//! doublings absorb into the larger infinite operand; nothing here ever needs
//! exponentiation, so the universe stays closed under every operation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest aleph index accepted by default when parsing user input.
pub const DEFAULT_MAX_ALEPH: u32 = 3;

/// A cardinal number: either a natural or `aleph_i` for a finite index `i`.
///
/// The derived ordering is the cardinal order: every finite value is below
/// every aleph, and alephs are ordered by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(u64),
    Aleph(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalError {
    #[error("invalid cardinal literal `{0}` (expected a natural like `3` or `aleph0`)")]
    Parse(String),
    #[error("aleph index {index} exceeds the configured bound {bound}")]
    AlephOutOfRange { index: u32, bound: u32 },
    #[error("the finite-subset identity needs an infinite cardinal, got {0}")]
    NotInfinite(Cardinal),
    #[error("lambda must be a nonzero cardinal")]
    ZeroLambda,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);
    pub const ONE: Cardinal = Cardinal::Finite(1);
    pub const ALEPH_0: Cardinal = Cardinal::Aleph(0);
    pub const ALEPH_1: Cardinal = Cardinal::Aleph(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        !self.is_finite()
    }

    pub fn finite_value(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Aleph(_) => None,
        }
    }

    pub fn compare(self, other: Cardinal) -> Ordering {
        self.cmp(&other)
    }

    /// Cardinal sum. Natural addition for two finite operands, otherwise the
    /// larger operand (an infinite cardinal absorbs anything not exceeding it).
    ///
    /// Panics if two finite operands overflow `u64`.
    pub fn csum(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                Cardinal::Finite(a.checked_add(b).expect("finite cardinal overflow"))
            }
            _ => self.max(other),
        }
    }

    /// `2 * a`; identity on infinite cardinals.
    pub fn cdouble(self) -> Cardinal {
        self.csum(self)
    }

    /// Cardinality of the set of finite subsets of a set of size `self`.
    /// Equal to `self` for infinite sets; finite inputs are rejected.
    pub fn pfin_card(self) -> Result<Cardinal, CardinalError> {
        if self.is_finite() {
            return Err(CardinalError::NotInfinite(self));
        }
        Ok(self)
    }

    /// Subtracts one from a finite cardinal; infinite cardinals are unchanged.
    /// `Finite(0)` stays at zero.
    pub fn pred(self) -> Cardinal {
        match self {
            Cardinal::Finite(n) => Cardinal::Finite(n.saturating_sub(1)),
            inf => inf,
        }
    }

    /// Parses a literal and rejects alephs above `max_aleph`.
    pub fn parse_bounded(s: &str, max_aleph: u32) -> Result<Cardinal, CardinalError> {
        let c: Cardinal = s.parse()?;
        match c {
            Cardinal::Aleph(index) if index > max_aleph => Err(CardinalError::AlephOutOfRange {
                index,
                bound: max_aleph,
            }),
            c => Ok(c),
        }
    }

    /// `Finite(lo..=hi)` followed by `Aleph(0..=max_aleph)`, in increasing order.
    pub fn ladder(lo: u64, hi: u64, max_aleph: u32) -> Vec<Cardinal> {
        (lo..=hi)
            .map(Cardinal::Finite)
            .chain((0..=max_aleph).map(Cardinal::Aleph))
            .collect()
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph(i) => write!(f, "aleph{i}"),
        }
    }
}

/// Parses canonical literals only: no sign, no leading zeros, so that
/// `parse` followed by `to_string` is the identity on accepted input.
fn parse_canonical_natural(digits: &str) -> Option<u64> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

impl FromStr for Cardinal {
    type Err = CardinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = match s.strip_prefix("aleph") {
            Some(index) => parse_canonical_natural(index)
                .and_then(|i| u32::try_from(i).ok())
                .map(Cardinal::Aleph),
            None => parse_canonical_natural(s).map(Cardinal::Finite),
        };
        parsed.ok_or_else(|| CardinalError::Parse(s.to_string()))
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A named family whose cardinality is reported without being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySize {
    /// `card(W)`: the class of sets pair-equivalent to `D`.
    ClassW,
    /// `card(L)`: the class of sets homeomorphic to `D`.
    ClassL,
    /// `card({E in W : C subset E})`.
    ClassWContainingC,
}

impl FamilySize {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilySize::ClassW => "card(W)",
            FamilySize::ClassL => "card(L)",
            FamilySize::ClassWContainingC => "card({E in W : C subset E})",
        }
    }
}

/// The replication number of a design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaValue {
    Exact(Cardinal),
    FamilySize(FamilySize),
}

impl LambdaValue {
    /// Builds an exact lambda; designs need a nonzero replication number.
    pub fn exact(c: Cardinal) -> Result<LambdaValue, CardinalError> {
        if c < Cardinal::ONE {
            return Err(CardinalError::ZeroLambda);
        }
        Ok(LambdaValue::Exact(c))
    }

    pub(crate) fn one() -> LambdaValue {
        LambdaValue::Exact(Cardinal::ONE)
    }
}

impl fmt::Display for LambdaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaValue::Exact(c) => c.fmt(f),
            LambdaValue::FamilySize(name) => f.write_str(name.as_str()),
        }
    }
}

impl FromStr for LambdaValue {
    type Err = CardinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for name in [
            FamilySize::ClassW,
            FamilySize::ClassL,
            FamilySize::ClassWContainingC,
        ] {
            if s == name.as_str() {
                return Ok(LambdaValue::FamilySize(name));
            }
        }
        LambdaValue::exact(s.parse()?)
    }
}

impl Serialize for LambdaValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LambdaValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
