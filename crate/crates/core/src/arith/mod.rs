//! Exact scalars: [`Rational`], the `pi`-polynomial ring [`PiPoly`], and the
//! [`ValueRing`] contract the generic evaluators are written against.

pub mod numeric;
mod pipoly;
mod rational;
mod ring;

pub use pipoly::PiPoly;
pub use rational::{q, Rational};
pub use ring::ValueRing;
