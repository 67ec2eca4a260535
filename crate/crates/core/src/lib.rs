//! Exact evaluation of recurrent sums
//!
//! A recurrent sum of order `m` over the bounds `q..=n` is the nested sum
//!
//! ```text
//! R(m, q, n) = sum over q <= N_1 <= N_2 <= ... <= N_m <= n of a_(m)(N_m) * ... * a_(1)(N_1)
//! ```
//!
//! with `R(0, q, n) = 1`. This crate evaluates such sums three independent ways
//! (direct enumeration, the step-by-step variation update, and the partition
//! reduction into power sums) and uses the machinery to check a family of
//! partition identities, closed forms for nested sums of powers, and nested
//! zeta-star values at even arguments.
//!
//! Everything is exact: scalars are arbitrary precision [`Rational`]s and
//! values involving `pi` are carried symbolically as [`PiPoly`].

pub mod arith;
pub mod engine;
pub mod error;
pub mod partitions;
pub mod special;
pub mod zeta;

pub use arith::{PiPoly, Rational, ValueRing};
pub use error::{RecsumError, Result};
pub use partitions::{MultPartition, SetPartition};
