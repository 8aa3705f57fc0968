//! Two-row partitions, categories of partitions and their enumeration.

pub mod category;
pub mod enumerate;
pub mod named;
mod partition;
pub mod shifted;

pub use category::{closure_audit, CategorySpec};
pub use enumerate::{
    enumerate, enumerate_bounded, enumerate_projective, enumerate_projective_zero, for_each_rgs,
    DEFAULT_POINT_BOUND,
};
pub use partition::{vertical_concat, BlockStats, Partition};
pub use shifted::{shifted_concat_1, shifted_concat_2, shifted_concat_2_with_loops};
