//! Exact arithmetic: rationals, quadratic-field elements and fixed-point decimals.

mod decimal;
mod quad;

pub use decimal::{dec_of_rational, dec_pi, dec_sqrt, pi_floor_scaled, Decimal};
pub use quad::{quad_mul, sqrt_rational, Quad};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result};

/// Canonical lowest-terms rational with a positive denominator.
pub fn rat_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    Ok(Rational::new(n.into(), d))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| format!("malformed rational `{text}`: bad numerator"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| format!("malformed rational `{text}`: bad denominator"))?;
    if d.is_zero() {
        return Err(format!("malformed rational `{text}`: zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Always `num/den`, including integers (`8/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// C(2n, n) for n = 0..=max.
pub fn central_binomials(max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(max + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for n in 1..=max as u64 {
        c = c * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n);
        out.push(c.clone());
    }
    out
}

/// Floor square root by Newton iteration, with the bracket `r² ≤ n < (r+1)²` checked.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let bits = n.bits();
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    assert!(
        &x * &x <= *n && (&x + 1u32) * (&x + 1u32) > *n,
        "isqrt bracket"
    );
    x
}

pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Natural log of |r| as f64, valid far beyond f64 range. `-inf` for zero.
pub fn ln_abs(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

pub(crate) fn to_biguint(n: &BigInt) -> Option<BigUint> {
    match n.sign() {
        Sign::Minus => None,
        _ => Some(n.magnitude().clone()),
    }
}

pub(crate) fn gcd_all<'a>(values: impl Iterator<Item = &'a BigInt>) -> BigInt {
    values.fold(BigInt::zero(), |g, v| g.gcd(v))
}

pub(crate) fn lcm_all<'a>(values: impl Iterator<Item = &'a BigInt>) -> BigInt {
    values.fold(BigInt::one(), |l, v| l.lcm(v))
}
