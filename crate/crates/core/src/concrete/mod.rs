//! The countable model: the naturals with 0 as the particular point.

mod family;
mod map;
mod set;

pub use family::{
    blocks_containing, excluding_blocks, local_design_check, realize, Block, Count,
    DesignCheckReport, FamilyError, ProbeResult, Refutation,
};
pub use map::{canonical_homeomorphism, check_homeomorphism, BoundMap, MapParseError, PointMap};
pub use set::{is_open, limit_points, ConcreteSet, SetKind, SetParseError, B};
