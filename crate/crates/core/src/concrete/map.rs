use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::set::{nth_outside, rank_outside, ConcreteSet, B};

/// A bijection between two concrete sets.
///
/// Points in the exception table map as listed. With alignment on, every
/// remaining source point maps order-preservingly onto the remaining target
/// points, with the particular point fixed whenever both sets contain it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMap {
    exceptions: Vec<(u64, u64)>,
    align: bool,
}

impl PointMap {
    pub fn new(exceptions: impl IntoIterator<Item = (u64, u64)>, align: bool) -> Self {
        let mut exceptions: Vec<(u64, u64)> = exceptions.into_iter().collect();
        exceptions.sort_unstable();
        exceptions.dedup_by_key(|(src, _)| *src);
        PointMap { exceptions, align }
    }

    pub fn exceptions(&self) -> &[(u64, u64)] {
        &self.exceptions
    }

    pub fn aligns(&self) -> bool {
        self.align
    }

    /// Image of `x` when the map is read as `source -> target`.
    pub fn apply(&self, x: u64, source: &ConcreteSet, target: &ConcreteSet) -> Option<u64> {
        self.bind(source, target).apply(x)
    }

    /// Precomputes the alignment between `source` and `target`.
    pub fn bind<'a>(&'a self, source: &'a ConcreteSet, target: &'a ConcreteSet) -> BoundMap<'a> {
        let fix_b = self.align
            && source.contains_b()
            && target.contains_b()
            && !self.exceptions.iter().any(|&(s, t)| s == B || t == B);
        let extra_b = fix_b.then_some(B);
        let src_removed = sorted(self.exceptions.iter().map(|&(s, _)| s).chain(extra_b));
        let tgt_removed = sorted(self.exceptions.iter().map(|&(_, t)| t).chain(extra_b));
        BoundMap {
            map: self,
            source,
            fix_b,
            src: Residual::new(source, src_removed),
            tgt: Residual::new(target, tgt_removed),
        }
    }
}

/// A [`PointMap`] read between two specific sets.
pub struct BoundMap<'a> {
    map: &'a PointMap,
    source: &'a ConcreteSet,
    fix_b: bool,
    src: Residual,
    tgt: Residual,
}

impl BoundMap<'_> {
    pub fn apply(&self, x: u64) -> Option<u64> {
        let ex = &self.map.exceptions;
        if let Ok(i) = ex.binary_search_by_key(&x, |&(s, _)| s) {
            return Some(ex[i].1);
        }
        if !self.map.align || !self.source.contains(x) {
            return None;
        }
        if self.fix_b && x == B {
            return Some(B);
        }
        self.tgt.nth(self.src.rank(x)?)
    }

    /// Images of the source points up to `bound`, in source order; `None` if
    /// any of them has no image. Same values as [`BoundMap::apply`], but the
    /// aligned part walks both residuals in step instead of ranking each point.
    pub fn prefix_images(&self, bound: u64) -> Option<Vec<u64>> {
        let ex = &self.map.exceptions;
        let mut targets = self.tgt.iter();
        let mut out = Vec::with_capacity(bound as usize + 1);
        for x in self.source.elements_up_to(bound) {
            let y = if let Ok(i) = ex.binary_search_by_key(&x, |&(s, _)| s) {
                ex[i].1
            } else if !self.map.align {
                return None;
            } else if self.fix_b && x == B {
                B
            } else {
                targets.next()?
            };
            out.push(y);
        }
        Some(out)
    }
}

/// A concrete set with finitely many points taken out.
enum Residual {
    /// Remaining elements of a finite set.
    Finite(Vec<u64>),
    /// Sorted non-elements of a cofinite set.
    Cofinite(Vec<u64>),
}

impl Residual {
    fn new(set: &ConcreteSet, removed: Vec<u64>) -> Residual {
        if set.is_finite() {
            Residual::Finite(
                set.points()
                    .iter()
                    .copied()
                    .filter(|p| removed.binary_search(p).is_err())
                    .collect(),
            )
        } else {
            Residual::Cofinite(merge_union(set.points(), &removed))
        }
    }

    fn rank(&self, x: u64) -> Option<u64> {
        match self {
            Residual::Finite(elems) => elems.binary_search(&x).ok().map(|i| i as u64),
            Residual::Cofinite(holes) => rank_outside(holes, x),
        }
    }

    fn iter(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            Residual::Finite(elems) => Box::new(elems.iter().copied()),
            Residual::Cofinite(holes) => {
                let mut next_hole = holes.iter().copied().peekable();
                Box::new((0..).filter(move |&x| {
                    while next_hole.next_if(|&h| h < x).is_some() {}
                    next_hole.next_if_eq(&x).is_none()
                }))
            }
        }
    }

    fn nth(&self, i: u64) -> Option<u64> {
        match self {
            Residual::Finite(elems) => elems.get(i as usize).copied(),
            Residual::Cofinite(holes) => Some(nth_outside(holes, i)),
        }
    }
}

/// Union of two sorted, duplicate-free lists.
fn merge_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let next = a[i].min(b[j]);
        i += usize::from(a[i] == next);
        j += usize::from(b[j] == next);
        out.push(next);
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn sorted(it: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// A homeomorphism `U -> V`, if one exists.
///
/// Finite subspaces are discrete, so any bijection works and the sorted
/// zip is used. Infinite subspaces of the countable model are cofinite; they
/// are homeomorphic exactly when both or neither contain the particular point,
/// and then the alignment fixing it is a homeomorphism.
pub fn canonical_homeomorphism(u: &ConcreteSet, v: &ConcreteSet) -> Option<PointMap> {
    match (u.is_finite(), v.is_finite()) {
        (true, true) => {
            if u.points().len() != v.points().len() {
                return None;
            }
            let pairs: Vec<(u64, u64)> = if u.contains_b() && v.contains_b() {
                let rest = u.points()[1..].iter().copied().zip(v.points()[1..].iter().copied());
                std::iter::once((B, B)).chain(rest).collect()
            } else {
                u.points().iter().copied().zip(v.points().iter().copied()).collect()
            };
            Some(PointMap::new(pairs, false))
        }
        (false, false) if u.contains_b() == v.contains_b() => Some(PointMap::new([], true)),
        _ => None,
    }
}

/// Verifies that `map` is a homeomorphism `U -> V`.
///
/// A bijection between finite sets is always a homeomorphism. Between infinite
/// sets it must also respect the particular point, which is the only point
/// with non-trivial neighbourhoods; bijectivity is checked on a prefix long
/// enough to cover every exceptional point and the alignment shift.
pub fn check_homeomorphism(map: &PointMap, u: &ConcreteSet, v: &ConcreteSet) -> bool {
    if u.is_finite() != v.is_finite() {
        return false;
    }
    let bound = map.bind(u, v);
    if u.is_finite() {
        if u.points().len() != v.points().len() {
            return false;
        }
        let Some(mut images) = u.points().iter().map(|&x| bound.apply(x)).collect::<Option<Vec<u64>>>() else {
            return false;
        };
        images.sort_unstable();
        // Equal lengths: the image list equals V exactly when the map is a bijection onto V.
        return images == v.points();
    }

    if u.contains_b() != v.contains_b() {
        return false;
    }
    if u.contains_b() && bound.apply(B) != Some(B) {
        return false;
    }
    let ex = map.exceptions();
    let horizon = u
        .points()
        .iter()
        .chain(v.points())
        .chain(ex.iter().flat_map(|(s, t)| [s, t]))
        .copied()
        .max()
        .unwrap_or(0)
        + 1;
    // The k-th aligned source point sits at most this far past the k-th aligned target point.
    let shift = (u.points().len() + ex.len() + 1) as u64;

    let Some(mut images) = bound.prefix_images(horizon + shift) else {
        return false;
    };
    if !images.iter().all(|&y| v.contains(y)) {
        return false;
    }
    images.sort_unstable();
    if images.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut hit = images.iter().copied().peekable();
    v.elements_up_to(horizon).all(|y| {
        while hit.next_if(|&i| i < y).is_some() {}
        hit.next_if_eq(&y).is_some()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid point map `{0}` (expected e.g. `1->7,2->9;align=false`)")]
pub struct MapParseError(String);

impl fmt::Display for PointMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.exceptions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}->{t}")?;
        }
        write!(f, ";align={}", self.align)
    }
}

impl FromStr for PointMap {
    type Err = MapParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || MapParseError(s.to_string());
        let (pairs, flag) = s.rsplit_once(";align=").ok_or_else(err)?;
        let align = flag.parse::<bool>().map_err(|_| err())?;
        let mut exceptions = Vec::new();
        if !pairs.is_empty() {
            for pair in pairs.split(',') {
                let (a, b) = pair.split_once("->").ok_or_else(err)?;
                exceptions.push((a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?));
            }
        }
        Ok(PointMap::new(exceptions, align))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin<const N: usize>(p: [u64; N]) -> ConcreteSet {
        ConcreteSet::finite(p)
    }

    #[test]
    fn finite_alignment() {
        let (u, v) = (fin([1, 2]), fin([7, 9]));
        let m = canonical_homeomorphism(&u, &v).unwrap();
        assert_eq!(m.exceptions(), &[(1, 7), (2, 9)]);
        assert!(check_homeomorphism(&m, &u, &v));
    }

    #[test]
    fn infinite_sets_with_different_b_are_not_homeomorphic() {
        let (u, v) = (ConcreteSet::cofinite([0]), ConcreteSet::whole());
        assert_eq!(canonical_homeomorphism(&u, &v), None);
        // No alignment can repair this, whichever way it is read.
        assert!(!check_homeomorphism(&PointMap::new([], true), &u, &v));
        assert!(!check_homeomorphism(&PointMap::new([], true), &v, &u));
    }

    #[test]
    fn infinite_alignment_fixes_b() {
        let u = ConcreteSet::cofinite([1, 3, 5]);
        let v = ConcreteSet::cofinite([2]);
        let m = canonical_homeomorphism(&u, &v).unwrap();
        assert!(check_homeomorphism(&m, &u, &v));
        assert_eq!(m.apply(0, &u, &v), Some(0));
        assert_eq!(m.apply(2, &u, &v), Some(1));
        assert_eq!(m.apply(4, &u, &v), Some(3));
        assert_eq!(m.apply(6, &u, &v), Some(4));
        assert_eq!(m.apply(7, &u, &v), Some(5));
    }

    #[test]
    fn moving_b_is_rejected() {
        let u = ConcreteSet::whole();
        let v = ConcreteSet::whole();
        // A bijection of the naturals swapping 0 and 1: not continuous at 0.
        let swap = PointMap::new([(0, 1), (1, 0)], true);
        assert_eq!(swap.apply(5, &u, &v), Some(5));
        assert!(!check_homeomorphism(&swap, &u, &v));
        // Swapping two ordinary points is fine.
        let ok = PointMap::new([(3, 4), (4, 3)], true);
        assert!(check_homeomorphism(&ok, &u, &v));
    }

    #[test]
    fn non_bijections_are_rejected() {
        let u = fin([1, 2, 3]);
        let v = fin([4, 5, 6]);
        assert!(!check_homeomorphism(&PointMap::new([(1, 4), (2, 4), (3, 6)], false), &u, &v));
        assert!(!check_homeomorphism(&PointMap::new([(1, 4), (2, 5)], false), &u, &v));
        assert!(!check_homeomorphism(&PointMap::new([(1, 4), (2, 5), (3, 9)], false), &u, &v));
        assert!(!check_homeomorphism(&PointMap::new([], true), &fin([1]), &ConcreteSet::whole()));
        // An exception hitting an excluded point breaks surjectivity checks downstream.
        let w = ConcreteSet::cofinite([2]);
        assert!(!check_homeomorphism(&PointMap::new([(1, 2)], true), &w, &w));
    }

    #[test]
    fn prefix_images_match_apply() {
        let u = ConcreteSet::cofinite([2, 5, 6]);
        let v = ConcreteSet::cofinite([0, 1, 9]);
        for map in [PointMap::new([], true), PointMap::new([(3, 4), (4, 3)], true), PointMap::new([(0, 20)], true)] {
            let bound = map.bind(&u, &v);
            let walked = bound.prefix_images(40).unwrap();
            let ranked: Vec<u64> = u.elements_up_to(40).map(|x| bound.apply(x).unwrap()).collect();
            assert_eq!(walked, ranked, "{map}");
        }
        let f = fin([1, 2, 3]);
        let short = PointMap::new([], true);
        assert_eq!(short.bind(&f, &fin([7, 8])).prefix_images(10), None);
        assert_eq!(PointMap::new([(1, 5)], false).bind(&f, &f).prefix_images(10), None);
    }

    #[test]
    fn merge_union_of_sorted_lists() {
        assert_eq!(merge_union(&[1, 4, 9], &[0, 4, 10]), vec![0, 1, 4, 9, 10]);
        assert_eq!(merge_union(&[], &[2]), vec![2]);
        assert_eq!(merge_union(&[3], &[]), vec![3]);
    }

    #[test]
    fn identity_on_singleton() {
        let s = fin([3]);
        assert!(check_homeomorphism(&PointMap::new([(3, 3)], false), &s, &s));
    }

    #[test]
    fn text_round_trip() {
        let m = PointMap::new([(1, 7), (2, 9)], false);
        assert_eq!(m.to_string(), "1->7,2->9;align=false");
        assert_eq!(m.to_string().parse::<PointMap>(), Ok(m));
        let a = PointMap::new([], true);
        assert_eq!(a.to_string(), ";align=true");
        assert_eq!(";align=true".parse::<PointMap>(), Ok(a));
        assert!("1->2".parse::<PointMap>().is_err());
    }
}
