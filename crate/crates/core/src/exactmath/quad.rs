use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{is_perfect_square, to_biguint};
use crate::scalar::{Field, SqrtField};
use crate::{Error, Rational, Result};

/// `a + b√d` for a fixed non-negative integer radicand `d`.
///
/// An element with `b = 0` is rational and combines with any radicand; two
/// irrational elements combine only when their radicands agree. When `d` is
/// a perfect square the element is folded to `b = 0`.
#[derive(Clone, Debug)]
pub struct Quad<R> {
    radicand: BigUint,
    a: R,
    b: R,
}

impl<R: Field> Quad<R> {
    pub fn new(radicand: BigUint, a: R, b: R) -> Self {
        if b.is_zero() {
            return Quad { radicand, a, b };
        }
        if let Some(root) = is_perfect_square(&radicand) {
            let root = R::from_bigint(&BigInt::from(root));
            return Quad {
                radicand,
                a: a + b * root,
                b: R::zero(),
            };
        }
        Quad { radicand, a, b }
    }

    pub fn rational(a: R) -> Self {
        Quad {
            radicand: BigUint::zero(),
            a,
            b: R::zero(),
        }
    }

    /// `√d`.
    pub fn surd(radicand: impl Into<BigUint>) -> Self {
        Quad::new(radicand.into(), R::zero(), R::one())
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn a(&self) -> &R {
        &self.a
    }

    pub fn b(&self) -> &R {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quad {
            radicand: self.radicand.clone(),
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> R {
        self.a.clone() * self.a.clone() - self.d() * self.b.clone() * self.b.clone()
    }

    fn d(&self) -> R {
        R::from_bigint(&BigInt::from(self.radicand.clone()))
    }

    fn common_radicand(&self, other: &Self) -> Result<BigUint> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(if self.radicand.is_zero() {
                other.radicand.clone()
            } else {
                self.radicand.clone()
            }),
            (true, false) => Ok(other.radicand.clone()),
            (false, true) => Ok(self.radicand.clone()),
            (false, false) if self.radicand == other.radicand => Ok(self.radicand.clone()),
            (false, false) => Err(Error::IncompatibleField(
                self.radicand.to_string(),
                other.radicand.to_string(),
            )),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Quad::new(
            d,
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = R::from_bigint(&BigInt::from(d.clone()));
        let a = self.a.clone() * other.a.clone() + self.b.clone() * other.b.clone() * dd;
        let b = self.a.clone() * other.b.clone() + other.a.clone() * self.b.clone();
        Ok(Quad::new(d, a, b))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let n = other.norm();
        if n.is_zero() {
            return Err(Error::Domain("division by zero in quadratic field".into()));
        }
        let num = self.try_mul(&other.conj())?;
        Ok(Quad::new(num.radicand, num.a / n.clone(), num.b / n))
    }
}

impl Quad<Rational> {
    /// `q·√s` when the element is a rational multiple of a single surd.
    pub fn as_monomial(&self) -> Option<(Rational, BigUint)> {
        if self.b.is_zero() {
            Some((self.a.clone(), BigUint::one()))
        } else if self.a.is_zero() {
            Some((self.b.clone(), self.radicand.clone()))
        } else {
            None
        }
    }

    pub fn is_negative(&self) -> bool {
        // sign of a + b√d decided exactly: compare a² with d·b²
        let a_neg = self.a.is_negative();
        let b_neg = self.b.is_negative();
        if self.b.is_zero() {
            return a_neg;
        }
        if self.a.is_zero() || a_neg == b_neg {
            return b_neg;
        }
        let a2 = &self.a * &self.a;
        let db2 = self.d() * &self.b * &self.b;
        if a2 > db2 {
            a_neg
        } else {
            b_neg
        }
    }
}

/// Exact product of two elements over the same radicand.
pub fn quad_mul(x: &Quad<Rational>, y: &Quad<Rational>) -> Result<Quad<Rational>> {
    x.try_mul(y)
}

const SMALL_PRIMES_LIMIT: u32 = 1000;

/// `√r` for a non-negative rational, as `b√d` with integer `d`.
///
/// Square factors of primes below 1000 are pulled out of `d`; larger factors
/// are left in place (no factorization is attempted).
pub fn sqrt_rational(r: &Rational) -> Result<Quad<Rational>> {
    if r.is_negative() {
        return Err(Error::Domain(format!("square root of negative value {r}")));
    }
    if r.is_zero() {
        return Ok(Quad::rational(Rational::zero()));
    }
    let num = to_biguint(r.numer()).unwrap();
    let den = to_biguint(r.denom()).unwrap();
    let (mut d, mut coeff) = match is_perfect_square(&den) {
        Some(root) => (num, Rational::new(BigInt::one(), root.into())),
        None => (&num * &den, Rational::new(BigInt::one(), den.into())),
    };
    let mut p = 2u32;
    while p < SMALL_PRIMES_LIMIT {
        let p2 = BigUint::from(p * p);
        while (&d % &p2).is_zero() {
            d /= &p2;
            coeff *= Rational::from_integer(p.into());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok(Quad::new(d, Rational::zero(), coeff))
}

impl<R: Field> PartialEq for Quad<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.is_rational() && other.is_rational() {
            return self.a == other.a;
        }
        self.radicand == other.radicand && self.a == other.a && self.b == other.b
    }
}

impl<R: Field> Neg for Quad<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Quad {
            radicand: self.radicand,
            a: -self.a,
            b: -self.b,
        }
    }
}

// Operator impls panic on mismatched radicands; use the try_* methods to
// handle that case as an error.
macro_rules! forward_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<R: Field> $tr for Quad<R> {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                self.$try(&rhs)
                    .expect(concat!("Quad::", stringify!($method)))
            }
        }
    };
}
forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl<R: Field> Zero for Quad<R> {
    fn zero() -> Self {
        Quad::rational(R::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<R: Field> One for Quad<R> {
    fn one() -> Self {
        Quad::rational(R::one())
    }
}

impl<R: Field> Field for Quad<R> {
    fn from_bigint(n: &BigInt) -> Self {
        Quad::rational(R::from_bigint(n))
    }
}

impl SqrtField for Quad<Rational> {
    fn sqrt_checked(&self) -> Option<Self> {
        if !self.is_rational() {
            return None;
        }
        sqrt_rational(&self.a).ok()
    }
}

impl<R: Field + fmt::Display> fmt::Display for Quad<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})·√{}", self.a, self.b, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    fn q(d: u32, a: Rational, b: Rational) -> Quad<Rational> {
        Quad::new(BigUint::from(d), a, b)
    }

    #[test]
    fn conjugate_product() {
        let x = q(2, rat(1, 1), rat(1, 1));
        let y = q(2, rat(1, 1), rat(-1, 1));
        let p = quad_mul(&x, &y).unwrap();
        assert_eq!(p.a(), &rat(-1, 1));
        assert!(p.b().is_zero());
        assert_eq!(p.radicand(), &BigUint::from(2u32));
    }

    #[test]
    fn surd_squared() {
        let s = Quad::<Rational>::surd(41u32);
        let p = quad_mul(&s, &s).unwrap();
        assert_eq!(p, Quad::rational(rat(41, 1)));
    }

    #[test]
    fn prefactor_of_sqrt_transform() {
        let p = quad_mul(&q(41, rat(5, 32), rat(0, 1)), &q(41, rat(0, 1), rat(1, 1))).unwrap();
        assert_eq!(p, q(41, rat(0, 1), rat(5, 32)));
    }

    #[test]
    fn mismatched_radicands_rejected() {
        let e = quad_mul(&Quad::surd(2u32), &Quad::surd(3u32)).unwrap_err();
        assert!(matches!(e, Error::IncompatibleField(_, _)));
    }

    #[test]
    fn perfect_square_radicand_folds() {
        let x = q(9, rat(1, 1), rat(2, 1));
        assert!(x.is_rational());
        assert_eq!(x.a(), &rat(7, 1));
    }

    #[test]
    fn sqrt_of_rationals() {
        let s = sqrt_rational(&rat(1025, 1024)).unwrap();
        assert_eq!(s, q(41, rat(0, 1), rat(5, 32)));
        let s = sqrt_rational(&rat(5, 4)).unwrap();
        assert_eq!(s, q(5, rat(0, 1), rat(1, 2)));
        let s = sqrt_rational(&rat(4, 9)).unwrap();
        assert_eq!(s, Quad::rational(rat(2, 3)));
        assert!(sqrt_rational(&rat(-1, 2)).is_err());
        let s = sqrt_rational(&rat(1, 2)).unwrap();
        assert_eq!(s, q(2, rat(0, 1), rat(1, 2)));
    }

    #[test]
    fn division_and_sign() {
        let x = q(2, rat(3, 1), rat(1, 1));
        let y = q(2, rat(1, 1), rat(-1, 1));
        let r = x.try_div(&y).unwrap();
        assert_eq!(r.try_mul(&y).unwrap(), x);
        assert!(y.is_negative());
        assert!(!x.is_negative());
        assert!(q(2, rat(-2, 1), rat(1, 1)).is_negative());
    }

    #[test]
    fn generic_over_f64() {
        let x: Quad<f64> = Quad::new(BigUint::from(2u32), 1.0, 1.0);
        let y: Quad<f64> = Quad::new(BigUint::from(2u32), 1.0, -1.0);
        assert_eq!((x * y).a(), &-1.0);
    }

    fn elem() -> impl Strategy<Value = Quad<Rational>> {
        (-200i64..200, 1i64..50, -200i64..200, 1i64..50)
            .prop_map(|(an, ad, bn, bd)| q(7, rat(an, ad), rat(bn, bd)))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in elem(), y in elem()) {
            let p = quad_mul(&x, &y).unwrap();
            prop_assert_eq!(p.norm(), x.norm() * y.norm());
        }
    }
}
