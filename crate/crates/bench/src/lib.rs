//! Inputs shared by the benchmarks.

use topdesign_core::concrete::ConcreteSet;
use topdesign_core::designs::GridSpec;
use topdesign_core::{SpaceDescriptor, SubsetDescriptor};

/// Every finite and cofinite subset of the naturals whose listed points lie below `bits`.
pub fn prefix_sets(bits: u32) -> Vec<ConcreteSet> {
    let points = move |mask: u64| (0..u64::from(bits)).filter(move |i| mask >> i & 1 == 1);
    let finite = (0..1u64 << bits).map(|m| ConcreteSet::finite(points(m)));
    let cofinite = (0..1u64 << bits).map(|m| ConcreteSet::cofinite(points(m)));
    finite.chain(cofinite).collect()
}

/// All `(X, C, D)` triples of a descriptor grid.
pub fn grid_triples(grid: &GridSpec) -> Vec<(SpaceDescriptor, SubsetDescriptor, SubsetDescriptor)> {
    grid.spaces()
        .into_iter()
        .flat_map(|x| {
            let subsets = grid.subsets(x);
            let pairs: Vec<_> = subsets.iter().flat_map(|c| subsets.iter().map(move |d| (x, *c, *d))).collect();
            pairs
        })
        .collect()
}
