//! Scalar abstraction shared by the algebraic layers.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::Rational;

/// A commutative field the polynomial, quadratic-extension and jet code can
/// run over. Implemented for `f32`, `f64` and exact rationals.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_bigint(n: &BigInt) -> Self;

    fn from_rational(r: &Rational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
}

/// Fields where the square root of a constant can be taken exactly (or at
/// working precision for floats), when it exists inside the field.
pub trait SqrtField: Field {
    fn sqrt_checked(&self) -> Option<Self>;
}

impl Field for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

impl Field for Rational {
    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl SqrtField for f64 {
    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

impl SqrtField for f32 {
    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}
