use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cardinal::Cardinal;
use crate::descriptors::SubsetDescriptor;

/// The particular point of the concrete model.
pub const B: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetKind {
    /// The listed points are the elements.
    Finite,
    /// The listed points are the elements missing from the naturals.
    Cofinite,
}

/// A finite or cofinite set of naturals.
///
/// The point list is strictly increasing; whether it lists members or
/// non-members depends on [`SetKind`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConcreteSet {
    kind: SetKind,
    points: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetParseError {
    #[error("expected `fin:` or `cofin:` prefix in `{0}`")]
    Prefix(String),
    #[error("invalid point `{0}`")]
    Point(String),
    #[error("points must be strictly increasing in `{0}`")]
    Unsorted(String),
}

fn normalize(points: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = points.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl ConcreteSet {
    pub fn finite(points: impl IntoIterator<Item = u64>) -> Self {
        ConcreteSet {
            kind: SetKind::Finite,
            points: normalize(points),
        }
    }

    /// The naturals minus `excluded`.
    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        ConcreteSet {
            kind: SetKind::Cofinite,
            points: normalize(excluded),
        }
    }

    pub fn empty() -> Self {
        Self::finite([])
    }

    pub fn whole() -> Self {
        Self::cofinite([])
    }

    /// A concrete set with the given descriptor in the countable model, if the
    /// descriptor is finite or cofinite. Finite sets are packed at the bottom
    /// of the naturals; cofinite sets miss their lowest points.
    pub fn canonical(desc: &SubsetDescriptor) -> Option<Self> {
        if let (Some(n), true) = (desc.size.finite_value(), desc.cosize == Cardinal::ALEPH_0) {
            return Some(if desc.contains_b {
                Self::finite((1..n).chain([B]))
            } else {
                Self::finite(1..=n)
            });
        }
        if let (true, Some(m)) = (desc.size == Cardinal::ALEPH_0, desc.cosize.finite_value()) {
            return Some(if desc.contains_b {
                Self::cofinite(1..=m)
            } else {
                Self::cofinite((1..m).chain([B]))
            });
        }
        None
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    /// Members of a finite set, non-members of a cofinite one.
    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn is_finite(&self) -> bool {
        self.kind == SetKind::Finite
    }

    pub fn contains(&self, x: u64) -> bool {
        let listed = self.points.binary_search(&x).is_ok();
        match self.kind {
            SetKind::Finite => listed,
            SetKind::Cofinite => !listed,
        }
    }

    pub fn contains_b(&self) -> bool {
        self.contains(B)
    }

    /// Number of elements of a finite set.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.points.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.points.is_empty()
    }

    pub fn max_point(&self) -> Option<u64> {
        self.points.last().copied()
    }

    pub fn complement(&self) -> Self {
        ConcreteSet {
            kind: match self.kind {
                SetKind::Finite => SetKind::Cofinite,
                SetKind::Cofinite => SetKind::Finite,
            },
            points: self.points.clone(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let a: BTreeSet<u64> = self.points.iter().copied().collect();
        let b: BTreeSet<u64> = other.points.iter().copied().collect();
        match (self.kind, other.kind) {
            (SetKind::Finite, SetKind::Finite) => Self::finite(a.intersection(&b).copied()),
            (SetKind::Finite, SetKind::Cofinite) => Self::finite(a.difference(&b).copied()),
            (SetKind::Cofinite, SetKind::Finite) => Self::finite(b.difference(&a).copied()),
            (SetKind::Cofinite, SetKind::Cofinite) => Self::cofinite(a.union(&b).copied()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.complement()
            .intersection(&other.complement())
            .complement()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(other) == *self
    }

    /// The `i`-th smallest element (0-based).
    pub fn nth(&self, i: usize) -> Option<u64> {
        match self.kind {
            SetKind::Finite => self.points.get(i).copied(),
            SetKind::Cofinite => Some(nth_outside(&self.points, i as u64)),
        }
    }

    /// Position of `x` among the elements, if `x` is an element.
    pub fn rank(&self, x: u64) -> Option<usize> {
        match self.kind {
            SetKind::Finite => self.points.binary_search(&x).ok(),
            SetKind::Cofinite => rank_outside(&self.points, x).map(|r| r as usize),
        }
    }

    /// Elements not exceeding `bound`, in increasing order.
    pub fn elements_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        let finite = self.is_finite();
        let mut listed = self.points.iter().copied().peekable();
        (0..=bound).filter(move |&x| {
            while listed.next_if(|&p| p < x).is_some() {}
            listed.next_if_eq(&x).is_some() == finite
        })
    }

    /// The descriptor of this set inside the countable model.
    pub fn descriptor(&self) -> SubsetDescriptor {
        let n = Cardinal::Finite(self.points.len() as u64);
        match self.kind {
            SetKind::Finite => SubsetDescriptor::new(n, self.contains_b(), Cardinal::ALEPH_0),
            SetKind::Cofinite => SubsetDescriptor::new(Cardinal::ALEPH_0, self.contains_b(), n),
        }
    }
}

/// `i`-th natural (0-based) not in the sorted list `holes`.
pub(crate) fn nth_outside(holes: &[u64], i: u64) -> u64 {
    let mut y = i;
    for &h in holes {
        if h <= y {
            y += 1;
        } else {
            break;
        }
    }
    y
}

/// Position of `x` among the naturals not in `holes`, if `x` is not a hole.
pub(crate) fn rank_outside(holes: &[u64], x: u64) -> Option<u64> {
    match holes.binary_search(&x) {
        Ok(_) => None,
        Err(below) => Some(x - below as u64),
    }
}

/// Whether `set` is open in the Fort topology on the naturals with particular point 0.
pub fn is_open(set: &ConcreteSet) -> bool {
    !set.contains_b() || !set.is_finite()
}

/// The derived set: 0 is the unique limit point of every infinite set.
pub fn limit_points(set: &ConcreteSet) -> ConcreteSet {
    if set.is_finite() {
        ConcreteSet::empty()
    } else {
        ConcreteSet::finite([B])
    }
}

impl fmt::Display for ConcreteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.kind {
            SetKind::Finite => "fin:",
            SetKind::Cofinite => "cofin:",
        })?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ConcreteSet {
    type Err = SetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = if let Some(rest) = s.strip_prefix("fin:") {
            (SetKind::Finite, rest)
        } else if let Some(rest) = s.strip_prefix("cofin:") {
            (SetKind::Cofinite, rest)
        } else {
            return Err(SetParseError::Prefix(s.to_string()));
        };
        let mut points = Vec::new();
        if !rest.is_empty() {
            for tok in rest.split(',') {
                let canonical = !tok.is_empty()
                    && tok.bytes().all(|b| b.is_ascii_digit())
                    && (tok.len() == 1 || !tok.starts_with('0'));
                let p: u64 = canonical
                    .then(|| tok.parse().ok())
                    .flatten()
                    .ok_or_else(|| SetParseError::Point(tok.to_string()))?;
                if points.last().is_some_and(|&last| last >= p) {
                    return Err(SetParseError::Unsorted(s.to_string()));
                }
                points.push(p);
            }
        }
        Ok(ConcreteSet { kind, points })
    }
}
