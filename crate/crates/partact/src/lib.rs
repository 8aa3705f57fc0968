pub mod cli;
pub mod error;
pub mod exactmath;
pub mod functors;
pub mod partitions;
pub mod rigidity;
pub mod tensorrep;
pub mod yd;

pub use error::{Error, Result};
