//! Deciding the existence of topological designs on infinite spaces with a
//! particular point whose open sets are the sets missing it or cofinite.
//!
//! Subsets are described up to homeomorphism by [`SubsetDescriptor`]; the
//! [`designs`] module decides each design type from those descriptors, and
//! [`concrete`] and [`finitebrute`] check witnesses on explicit sets.

pub mod cardinal;
pub mod concrete;
pub mod descriptors;
pub mod designs;
pub mod finitebrute;

pub use cardinal::{Cardinal, CardinalError, FamilySize, LambdaValue};
pub use descriptors::{SpaceDescriptor, SubsetDescriptor, Violation};
pub use designs::{decide, CaseTag, DecideError, DesignType, FamilyDescriptor, Verdict, VerdictRecord};
