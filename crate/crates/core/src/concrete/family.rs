//! Enumerating design witnesses in the countable model and counting the
//! blocks that contain a probe.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use super::set::{ConcreteSet, B};
use crate::cardinal::Cardinal;
use crate::descriptors::SubsetDescriptor;
use crate::designs::{DesignType, FamilyDescriptor};

/// One block of an enumerable family.
///
/// The odd-tail blocks `X \ {2k+1 : k ≥ s}` are neither finite nor cofinite;
/// they are kept as their index and tested by parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Set(ConcreteSet),
    OddTail { s: u64 },
}

impl Block {
    pub fn contains(&self, x: u64) -> bool {
        match self {
            Block::Set(set) => set.contains(x),
            Block::OddTail { s } => x.is_multiple_of(2) || (x - 1) / 2 < *s,
        }
    }

    pub fn contains_set(&self, probe: &ConcreteSet) -> bool {
        match self {
            Block::Set(set) => probe.is_subset(set),
            // An odd-tail block misses infinitely many points, so it holds no cofinite set.
            Block::OddTail { .. } => {
                probe.is_finite() && probe.points().iter().all(|&x| self.contains(x))
            }
        }
    }

    /// The descriptor of the block in the countable model.
    pub fn descriptor(&self) -> SubsetDescriptor {
        match self {
            Block::Set(set) => set.descriptor(),
            // Holds every even number and misses every odd number past 2s.
            Block::OddTail { .. } => {
                SubsetDescriptor::new(Cardinal::ALEPH_0, self.contains(B), Cardinal::ALEPH_0)
            }
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Set(set) => set.fmt(f),
            Block::OddTail { s } => write!(f, "odd-tail:{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family {0} is not enumerable in the countable model")]
    NotEnumerable(FamilyDescriptor),
    #[error("odd-tail blocks are indexed from 1")]
    ZeroIndex,
}

/// The `index`-th block of an enumerable family. Singletons ignore the index.
pub fn realize(family: &FamilyDescriptor, index: u64) -> Result<Block, FamilyError> {
    match family {
        FamilyDescriptor::OddTail if index == 0 => Err(FamilyError::ZeroIndex),
        FamilyDescriptor::OddTail => Ok(Block::OddTail { s: index }),
        FamilyDescriptor::Singleton(member) => ConcreteSet::canonical(member)
            .map(Block::Set)
            .ok_or(FamilyError::NotEnumerable(*family)),
        FamilyDescriptor::ClassW(_) | FamilyDescriptor::ClassL(_) => {
            Err(FamilyError::NotEnumerable(*family))
        }
    }
}

/// A containment count, saturating at a cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Exactly(u64),
    AtLeast(u64),
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exactly(n) => write!(f, "Exactly({n})"),
            Count::AtLeast(n) => write!(f, "AtLeast({n})"),
        }
    }
}

impl Count {
    /// Whether the two counts cannot be equal.
    pub fn provably_differs(self, other: Count) -> bool {
        match (self, other) {
            (Count::Exactly(a), Count::Exactly(b)) => a != b,
            (Count::Exactly(a), Count::AtLeast(b)) | (Count::AtLeast(b), Count::Exactly(a)) => {
                a < b
            }
            (Count::AtLeast(_), Count::AtLeast(_)) => false,
        }
    }
}

/// Counts the blocks of `family` containing `probe`, saturating at `cutoff`.
///
/// `W(D)` and finite-`D` `L(D)` are enumerated over blocks that agree with
/// the canonical form outside a prefix of the naturals. The prefix is sized so
/// that any probe lying in infinitely many blocks reaches `cutoff`; a reported
/// `Exactly` is therefore the true count over the whole family.
pub fn blocks_containing(
    family: &FamilyDescriptor,
    probe: &ConcreteSet,
    cutoff: u64,
) -> Result<Count, FamilyError> {
    visit_blocks_containing(family, probe, cutoff, |_| {})
}

fn saturate(found: u64, cutoff: u64) -> Count {
    if found >= cutoff {
        Count::AtLeast(cutoff)
    } else {
        Count::Exactly(found)
    }
}

/// Past this index, membership of every probe point in an odd-tail block is fixed.
fn odd_tail_horizon(probe: &ConcreteSet) -> u64 {
    probe.max_point().unwrap_or(0) / 2 + 1
}

fn visit_blocks_containing(
    family: &FamilyDescriptor,
    probe: &ConcreteSet,
    cutoff: u64,
    mut visit: impl FnMut(&Block),
) -> Result<Count, FamilyError> {
    match family {
        FamilyDescriptor::OddTail => {
            let mut found = 0;
            for s in 1..=odd_tail_horizon(probe) + cutoff {
                if found == cutoff {
                    break;
                }
                let block = Block::OddTail { s };
                if block.contains_set(probe) {
                    visit(&block);
                    found += 1;
                }
            }
            Ok(saturate(found, cutoff))
        }
        FamilyDescriptor::Singleton(_) => {
            let block = realize(family, 1)?;
            if block.contains_set(probe) {
                visit(&block);
                Ok(Count::Exactly(1))
            } else {
                Ok(Count::Exactly(0))
            }
        }
        FamilyDescriptor::ClassW(d) | FamilyDescriptor::ClassL(d) => {
            let free_b = matches!(family, FamilyDescriptor::ClassL(_));
            let blocks = window_blocks(family, d, free_b, probe, cutoff)?;
            let mut found = 0;
            for block in blocks.take(cutoff as usize) {
                visit(&Block::Set(block));
                found += 1;
            }
            Ok(saturate(found, cutoff))
        }
    }
}

/// Blocks of `W(D)` (or finite-`D` `L(D)` when `free_b`) containing `probe`
/// whose deviation from the canonical form lies in the window.
fn window_blocks<'a>(
    family: &FamilyDescriptor,
    d: &SubsetDescriptor,
    free_b: bool,
    probe: &'a ConcreteSet,
    cutoff: u64,
) -> Result<Box<dyn Iterator<Item = ConcreteSet> + 'a>, FamilyError> {
    let not_enumerable = || FamilyError::NotEnumerable(*family);
    let none = || -> Box<dyn Iterator<Item = ConcreteSet>> { Box::new(std::iter::empty()) };

    if let (Some(size), true) = (d.size.finite_value(), d.cosize == Cardinal::ALEPH_0) {
        // Finite blocks of `size` points containing the probe.
        if !probe.is_finite() {
            return Ok(none());
        }
        let mut required: Vec<u64> = probe.points().to_vec();
        if !free_b {
            match (d.contains_b, probe.contains_b()) {
                (false, true) => return Ok(none()),
                (true, false) => required.insert(0, B),
                _ => {}
            }
        }
        let Some(free) = (size as usize).checked_sub(required.len()) else {
            return Ok(none());
        };
        let top = probe.max_point().unwrap_or(0) + cutoff + size + 1;
        let pool: Vec<u64> = (0..=top)
            .filter(|x| required.binary_search(x).is_err() && (free_b || *x != B))
            .collect();
        return Ok(Box::new(pool.into_iter().combinations(free).map(move |extra| {
            ConcreteSet::finite(required.iter().copied().chain(extra))
        })));
    }

    if free_b {
        // Homeomorphic copies of an infinite D include sets that are neither
        // finite nor cofinite.
        return Err(not_enumerable());
    }
    let (Some(missing), true) = (d.cosize.finite_value(), d.size == Cardinal::ALEPH_0) else {
        return Err(not_enumerable());
    };

    // Cofinite blocks X \ S with |S| = missing and b in S exactly when b is not in D.
    let mut forced: Vec<u64> = Vec::new();
    if !d.contains_b {
        forced.push(B);
    }
    let Some(free) = (missing as usize).checked_sub(forced.len()) else {
        return Err(not_enumerable());
    };
    let pool: Vec<u64> = if probe.is_finite() {
        if !d.contains_b && probe.contains_b() {
            return Ok(none());
        }
        let top = probe.max_point().unwrap_or(0) + cutoff + missing + 1;
        (1..=top).filter(|&x| !probe.contains(x)).collect()
    } else {
        // X \ S contains the cofinite probe exactly when S avoids the probe.
        if forced.iter().any(|&f| probe.contains(f)) {
            return Ok(none());
        }
        probe.points().iter().copied().filter(|&x| x != B).collect()
    };
    Ok(Box::new(pool.into_iter().combinations(free).map(move |extra| {
        ConcreteSet::cofinite(forced.iter().copied().chain(extra))
    })))
}

/// Number of blocks of an indexed infinite family that miss the probe, if finite.
pub fn excluding_blocks(family: &FamilyDescriptor, probe: &ConcreteSet) -> Option<u64> {
    match family {
        FamilyDescriptor::OddTail => {
            let horizon = odd_tail_horizon(probe);
            if !(Block::OddTail { s: horizon }).contains_set(probe) {
                return None;
            }
            Some((1..horizon).filter(|&s| !Block::OddTail { s }.contains_set(probe)).count() as u64)
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub probe: ConcreteSet,
    pub count: Count,
    /// Blocks of an infinite indexed family that miss the probe.
    pub excluded: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// No block contains the probe, while designs need a nonzero lambda.
    Uncovered(ConcreteSet),
    /// The two probes lie in provably different numbers of blocks.
    Unbalanced {
        first: (ConcreteSet, Count),
        second: (ConcreteSet, Count),
    },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Uncovered(p) => write!(f, "{p} lies in no block"),
            Refutation::Unbalanced { first, second } => {
                write!(f, "{} in {} blocks but {} in {} blocks", first.0, first.1, second.0, second.1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignCheckReport {
    pub probes: Vec<ProbeResult>,
    /// Probes that are not copies of `C` for the design type.
    pub rejected: Vec<ConcreteSet>,
    pub blocks_checked: u64,
    /// Blocks failing the homeomorphism conditions on blocks.
    pub bad_blocks: Vec<Block>,
    pub refutation: Option<Refutation>,
}

impl DesignCheckReport {
    pub fn consistent(&self) -> bool {
        self.rejected.is_empty() && self.bad_blocks.is_empty() && self.refutation.is_none()
    }
}

/// Checks a witness family against concrete probes.
///
/// Every probe must be a copy of `C` in the sense of the design type; every
/// block met while counting (and, for the odd-tail family, the first `cutoff`
/// blocks) must be homeomorphic to `D`, with complement homeomorphic to
/// `X \ D` when the type demands it. Probes with provably different counts
/// refute a uniform lambda.
pub fn local_design_check(
    family: &FamilyDescriptor,
    ty: DesignType,
    c: &SubsetDescriptor,
    d: &SubsetDescriptor,
    probes: &[ConcreteSet],
    cutoff: u64,
) -> Result<DesignCheckReport, FamilyError> {
    let mut report = DesignCheckReport {
        probes: Vec::new(),
        rejected: Vec::new(),
        blocks_checked: 0,
        bad_blocks: Vec::new(),
        refutation: None,
    };
    let block_ok = |block: &Block| {
        let desc = block.descriptor();
        if ty.requires_complement_match() {
            desc.pair_equivalent(d)
        } else {
            desc.subspace_homeomorphic(d)
        }
    };
    let check_block = |report: &mut DesignCheckReport, block: &Block| {
        report.blocks_checked += 1;
        if !block_ok(block) && !report.bad_blocks.contains(block) {
            report.bad_blocks.push(block.clone());
        }
    };

    if *family == FamilyDescriptor::OddTail {
        for s in 1..=cutoff {
            check_block(&mut report, &Block::OddTail { s });
        }
    }

    for probe in probes {
        let desc = probe.descriptor();
        let is_copy = if ty.restricts_probes() {
            desc.pair_equivalent(c)
        } else {
            desc.subspace_homeomorphic(c)
        };
        if !is_copy {
            report.rejected.push(probe.clone());
            continue;
        }
        let mut met = Vec::new();
        let count = visit_blocks_containing(family, probe, cutoff, |b| met.push(b.clone()))?;
        for block in &met {
            check_block(&mut report, block);
        }
        report.probes.push(ProbeResult {
            probe: probe.clone(),
            count,
            excluded: excluding_blocks(family, probe),
        });
    }

    report.refutation = find_refutation(&report.probes);
    Ok(report)
}

fn find_refutation(results: &[ProbeResult]) -> Option<Refutation> {
    if let Some(r) = results.iter().find(|r| r.count == Count::Exactly(0)) {
        return Some(Refutation::Uncovered(r.probe.clone()));
    }
    results.iter().tuple_combinations().find_map(|(a, b)| {
        a.count.provably_differs(b.count).then(|| Refutation::Unbalanced {
            first: (a.probe.clone(), a.count),
            second: (b.probe.clone(), b.count),
        })
    })
}
