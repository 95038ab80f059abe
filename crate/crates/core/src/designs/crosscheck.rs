//! Consistency sweeps over a grid of descriptors.

use std::fmt;

use crate::cardinal::Cardinal;
use crate::descriptors::{descriptor_grid, SpaceDescriptor, SubsetDescriptor};

use super::{DecideError, DesignType, Verdict};

/// The four statements that should be simultaneously true or false:
/// no type-2 design, no type-4 design, the embedding obstruction, and
/// non-embeddability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingEquivalence {
    pub no_type2: bool,
    pub no_type4: bool,
    /// `(C infinite and b ∈ C \ D) or card(C) > card(D)`.
    pub obstruction: bool,
    pub not_embeddable: bool,
}

impl EmbeddingEquivalence {
    const NAMES: [&'static str; 4] = ["no-type2", "no-type4", "obstruction", "not-embeddable"];

    fn values(&self) -> [bool; 4] {
        [self.no_type2, self.no_type4, self.obstruction, self.not_embeddable]
    }

    pub fn consistent(&self) -> bool {
        let v = self.values();
        v.iter().all(|&x| x == v[0])
    }

    /// Every pair of statements whose truth values differ.
    pub fn disagreements(&self) -> Vec<(&'static str, &'static str)> {
        let v = self.values();
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                if v[i] != v[j] {
                    out.push((Self::NAMES[i], Self::NAMES[j]));
                }
            }
        }
        out
    }
}

pub fn crosscheck_embedding_equivalence(
    c: &SubsetDescriptor,
    d: &SubsetDescriptor,
    space: SpaceDescriptor,
) -> Result<EmbeddingEquivalence, DecideError> {
    crosscheck_with(&super::decide, c, d, space)
}

fn crosscheck_with<F>(
    decide: &F,
    c: &SubsetDescriptor,
    d: &SubsetDescriptor,
    space: SpaceDescriptor,
) -> Result<EmbeddingEquivalence, DecideError>
where
    F: Fn(DesignType, &SubsetDescriptor, &SubsetDescriptor, SpaceDescriptor) -> Result<Verdict, DecideError>,
{
    Ok(EmbeddingEquivalence {
        no_type2: !decide(DesignType::Type2, c, d, space)?.exists(),
        no_type4: !decide(DesignType::Type4, c, d, space)?.exists(),
        obstruction: (!c.is_finite() && c.contains_b && !d.contains_b) || c.size > d.size,
        not_embeddable: !c.embeddable_in(d),
    })
}

/// Bounds of the descriptor grid swept by [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    /// Finite sizes `1..=max_finite` (and complement sizes `0..=max_finite`).
    pub max_finite: u64,
    /// `card(X)` ranges over `aleph_0..=aleph_max_aleph`.
    pub max_aleph: u32,
    /// Restrict `C` and `D` to finite sizes.
    pub finite_only: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            max_finite: 6,
            max_aleph: 1,
            finite_only: false,
        }
    }
}

impl GridSpec {
    pub fn spaces(&self) -> Vec<SpaceDescriptor> {
        (0..=self.max_aleph)
            .map(|i| SpaceDescriptor::new(Cardinal::Aleph(i)).expect("alephs are infinite"))
            .collect()
    }

    /// Nonempty descriptors valid in `space`.
    pub fn subsets(&self, space: SpaceDescriptor) -> Vec<SubsetDescriptor> {
        let max_aleph = if self.finite_only { None } else { Some(self.max_aleph) };
        let sizes: Vec<Cardinal> = (1..=self.max_finite)
            .map(Cardinal::Finite)
            .chain(max_aleph.into_iter().flat_map(|k| (0..=k).map(Cardinal::Aleph)))
            .collect();
        let cosizes = Cardinal::ladder(0, self.max_finite, self.max_aleph);
        descriptor_grid(space, &sizes, &cosizes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Decide(DesignType, DecideError),
    Equivalence(Vec<(&'static str, &'static str)>),
    Type1WithoutType2,
    Type3WithoutType4,
    /// A design was reported with `card(C) > card(D)`.
    CardinalityBound(DesignType),
    InvalidWitness(DesignType),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepViolation {
    pub space: SpaceDescriptor,
    pub c: SubsetDescriptor,
    pub d: SubsetDescriptor,
    pub kind: ViolationKind,
}

impl fmt::Display for SweepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={} C={} D={}: ", self.space.size(), self.c, self.d)?;
        match &self.kind {
            ViolationKind::Decide(ty, e) => write!(f, "type {ty} failed: {e}"),
            ViolationKind::Equivalence(pairs) => {
                write!(f, "embedding equivalence broken:")?;
                for (a, b) in pairs {
                    write!(f, " {a}/{b}")?;
                }
                Ok(())
            }
            ViolationKind::Type1WithoutType2 => f.write_str("type 1 exists but type 2 does not"),
            ViolationKind::Type3WithoutType4 => f.write_str("type 3 exists but type 4 does not"),
            ViolationKind::CardinalityBound(ty) => {
                write!(f, "type {ty} design reported with card(C) > card(D)")
            }
            ViolationKind::InvalidWitness(ty) => write!(f, "type {ty} witness is not valid"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub cases: usize,
    pub violations: Vec<SweepViolation>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every consistency property over the grid using the decision engine.
pub fn sweep(grid: &GridSpec) -> SweepReport {
    sweep_with(grid, &super::decide)
}

/// [`sweep`] against an arbitrary decider, so the harness itself can be tested
/// with deliberately faulty deciders.
pub fn sweep_with<F>(grid: &GridSpec, decide: &F) -> SweepReport
where
    F: Fn(DesignType, &SubsetDescriptor, &SubsetDescriptor, SpaceDescriptor) -> Result<Verdict, DecideError>,
{
    let mut report = SweepReport::default();
    for space in grid.spaces() {
        let subsets = grid.subsets(space);
        for c in &subsets {
            for d in &subsets {
                report.cases += 1;
                let mut push = |kind| {
                    report.violations.push(SweepViolation {
                        space,
                        c: *c,
                        d: *d,
                        kind,
                    })
                };

                let mut verdicts = Vec::with_capacity(4);
                for ty in DesignType::ALL {
                    match decide(ty, c, d, space) {
                        Ok(v) => verdicts.push(v),
                        Err(e) => push(ViolationKind::Decide(ty, e)),
                    }
                }
                if verdicts.len() != 4 {
                    continue;
                }
                let found = |ty: DesignType| verdicts[usize::from(ty.number() - 1)].exists();

                match crosscheck_with(decide, c, d, space) {
                    Ok(eq) if !eq.consistent() => {
                        push(ViolationKind::Equivalence(eq.disagreements()))
                    }
                    Ok(_) => {}
                    Err(e) => push(ViolationKind::Decide(DesignType::Type2, e)),
                }
                if found(DesignType::Type1) && !found(DesignType::Type2) {
                    push(ViolationKind::Type1WithoutType2);
                }
                if found(DesignType::Type3) && !found(DesignType::Type4) {
                    push(ViolationKind::Type3WithoutType4);
                }
                for (ty, v) in DesignType::ALL.into_iter().zip(&verdicts) {
                    if let Some(w) = v.witness() {
                        if c.size > d.size {
                            push(ViolationKind::CardinalityBound(ty));
                        }
                        if !w.is_valid_for(d, space) {
                            push(ViolationKind::InvalidWitness(ty));
                        }
                    }
                }
            }
        }
    }
    report
}
