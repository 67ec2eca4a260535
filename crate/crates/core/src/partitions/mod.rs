//! Integer partitions as multiplicity vectors and set partitions as block families.

mod integer;
mod set;

pub use integer::*;
pub use set::*;
