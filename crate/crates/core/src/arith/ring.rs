use std::fmt::Debug;
use std::ops::{Add, Mul, Neg};

use super::{PiPoly, Rational};

/// Commutative ring containing the rationals. The reduction evaluator is
/// generic over this so the same code produces both plain rational values
/// and exact `pi`-polynomials.
pub trait ValueRing:
    Clone + PartialEq + Debug + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    fn scale(&self, c: &Rational) -> Self {
        self.clone() * Self::from_rational(c)
    }

    fn powu(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl ValueRing for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn scale(&self, c: &Rational) -> Self {
        self * c
    }

    fn powu(&self, exp: u32) -> Self {
        Rational::powu(self, exp)
    }
}

impl ValueRing for PiPoly {
    fn zero() -> Self {
        PiPoly::zero()
    }

    fn one() -> Self {
        PiPoly::one()
    }

    fn is_zero(&self) -> bool {
        PiPoly::is_zero(self)
    }

    fn from_rational(r: &Rational) -> Self {
        PiPoly::constant(r.clone())
    }

    fn scale(&self, c: &Rational) -> Self {
        PiPoly::scale(self, c)
    }
}
