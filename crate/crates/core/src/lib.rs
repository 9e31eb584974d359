//! Exact computation of canonical logarithmic forms of regions cut out by real
//! hyperplane arrangements, with the combinatorial invariants around them.

pub mod arrangement;
pub mod checks;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod os;
pub mod region;
pub mod strata;

pub use error::{Error, ErrorClass, Result};
