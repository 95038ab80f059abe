//! Subsets of an infinite Fort space described up to pair-equivalence.
//!
//! Every point of `X` other than the particular point `b` is interchangeable
//! with every other, so a subset `S` is determined (up to a bijection of `X`
//! fixing `b`) by three facts: `card(S)`, `card(X \ S)` and whether `b` lies in `S`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cardinal::Cardinal;

/// An infinite Fort space `X`; only its cardinality matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    size: Cardinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("a Fort space must be infinite, got card(X) = {0}")]
pub struct FiniteSpaceError(pub Cardinal);

impl SpaceDescriptor {
    pub fn new(size: Cardinal) -> Result<Self, FiniteSpaceError> {
        if size.is_finite() {
            return Err(FiniteSpaceError(size));
        }
        Ok(SpaceDescriptor { size })
    }

    pub fn countable() -> Self {
        SpaceDescriptor { size: Cardinal::ALEPH_0 }
    }

    pub fn size(self) -> Cardinal {
        self.size
    }

    pub fn is_countable(self) -> bool {
        self.size == Cardinal::ALEPH_0
    }

    /// `X` itself.
    pub fn whole(self) -> SubsetDescriptor {
        SubsetDescriptor::new(self.size, true, Cardinal::ZERO)
    }

    /// `X \ {b}`.
    pub fn punctured(self) -> SubsetDescriptor {
        SubsetDescriptor::new(self.size, false, Cardinal::ONE)
    }

    /// A subset of size `size < card(X)`; its complement necessarily has size `card(X)`.
    pub fn small(self, size: Cardinal, contains_b: bool) -> SubsetDescriptor {
        SubsetDescriptor::new(size, contains_b, self.size)
    }
}

/// `(card(S), b in S, card(X \ S))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetDescriptor {
    pub size: Cardinal,
    pub contains_b: bool,
    pub cosize: Cardinal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    SizeExceedsSpace,
    CosizeExceedsSpace,
    /// `max(size, cosize) != card(X)`.
    PartsDoNotCoverSpace,
    EmptyContainsB,
    FullOmitsB,
    /// Reported only by [`SubsetDescriptor::validate_nonempty`].
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::SizeExceedsSpace => "size exceeds card(X)",
            Violation::CosizeExceedsSpace => "cosize exceeds card(X)",
            Violation::PartsDoNotCoverSpace => "max(size, cosize) must equal card(X)",
            Violation::EmptyContainsB => "an empty set cannot contain b",
            Violation::FullOmitsB => "a set with empty complement must contain b",
            Violation::Empty => "set must be nonempty",
        })
    }
}

impl SubsetDescriptor {
    pub const fn new(size: Cardinal, contains_b: bool, cosize: Cardinal) -> Self {
        SubsetDescriptor { size, contains_b, cosize }
    }

    pub fn validate(&self, space: SpaceDescriptor) -> Result<(), Vec<Violation>> {
        let x = space.size();
        let mut violations = Vec::new();
        if self.size > x {
            violations.push(Violation::SizeExceedsSpace);
        }
        if self.cosize > x {
            violations.push(Violation::CosizeExceedsSpace);
        }
        if self.size.max(self.cosize) != x {
            violations.push(Violation::PartsDoNotCoverSpace);
        }
        if self.size == Cardinal::ZERO && self.contains_b {
            violations.push(Violation::EmptyContainsB);
        }
        if self.cosize == Cardinal::ZERO && !self.contains_b {
            violations.push(Violation::FullOmitsB);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// Like [`validate`](Self::validate), additionally rejecting the empty set.
    pub fn validate_nonempty(&self, space: SpaceDescriptor) -> Result<(), Vec<Violation>> {
        let mut violations = self.validate(space).err().unwrap_or_default();
        if self.size == Cardinal::ZERO {
            violations.push(Violation::Empty);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn complement(&self) -> SubsetDescriptor {
        SubsetDescriptor {
            size: self.cosize,
            contains_b: !self.contains_b,
            cosize: self.size,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size.is_finite()
    }

    /// `card(S \ {b})`.
    pub fn size_minus_b(&self) -> Cardinal {
        if self.contains_b {
            self.size.pred()
        } else {
            self.size
        }
    }

    /// `card(X \ (S ∪ {b}))`.
    pub fn cosize_minus_b(&self) -> Cardinal {
        self.complement().size_minus_b()
    }

    /// Whether `U` and `V` are homeomorphic as subspaces.
    ///
    /// Finite subspaces are discrete, so only cardinality matters. An infinite
    /// subspace is a Fort space when it contains `b` and discrete otherwise.
    pub fn subspace_homeomorphic(&self, other: &SubsetDescriptor) -> bool {
        self.size == other.size && (self.is_finite() || self.contains_b == other.contains_b)
    }

    /// `U ≈ V` and `X \ U ≈ X \ V`.
    ///
    /// One of `U`, `X \ U` is always infinite, so `b`-membership must agree.
    pub fn pair_equivalent(&self, other: &SubsetDescriptor) -> bool {
        self.size == other.size
            && self.cosize == other.cosize
            && self.contains_b == other.contains_b
    }

    /// Whether `self` is homeomorphic to some subspace of `d`.
    pub fn embeddable_in(&self, d: &SubsetDescriptor) -> bool {
        let b_obstruction = self.contains_b && !d.contains_b;
        (self.is_finite() || !b_obstruction) && self.size <= d.size
    }
}

impl fmt::Display for SubsetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{size={},contains_b={},cosize={}}}",
            self.size, self.contains_b, self.cosize
        )
    }
}

/// Every valid descriptor in `space` whose size is in `sizes` (sizes above
/// `card(X)` are skipped). Complement sizes are drawn from `cosizes`.
pub fn descriptor_grid(
    space: SpaceDescriptor,
    sizes: &[Cardinal],
    cosizes: &[Cardinal],
) -> Vec<SubsetDescriptor> {
    let mut out = Vec::new();
    for &size in sizes {
        for contains_b in [false, true] {
            for &cosize in cosizes {
                let d = SubsetDescriptor::new(size, contains_b, cosize);
                if d.validate(space).is_ok() {
                    out.push(d);
                }
            }
        }
    }
    out
}
