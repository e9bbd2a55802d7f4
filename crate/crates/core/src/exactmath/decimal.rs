use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{isqrt, to_biguint};
use crate::{Error, Rational, Result};

pub const MIN_PI_DIGITS: u32 = 10;
pub const MAX_PI_DIGITS: u32 = 10_000;

/// Fixed-point decimal `mantissa · 10^(−scale)`.
///
/// Every constructor here truncates toward zero (π and square roots are
/// certified floors), so the value carries an absolute error below
/// `10^(−scale)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
    precision: u32,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

impl Decimal {
    pub fn from_parts(mantissa: BigInt, scale: u32) -> Self {
        Decimal {
            mantissa,
            scale,
            precision: scale,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Rescales to `digits` fractional digits, truncating toward zero.
    pub fn truncate(&self, digits: u32) -> Decimal {
        let mantissa = match digits.cmp(&self.scale) {
            Ordering::Less => &self.mantissa / pow10(self.scale - digits),
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(digits - self.scale),
        };
        Decimal::from_parts(mantissa, digits)
    }

    /// `|self − other|` at the finer of the two scales.
    pub fn abs_diff(&self, other: &Decimal) -> Decimal {
        let scale = self.scale.max(other.scale);
        let a = self.truncate(scale).mantissa;
        let b = other.truncate(scale).mantissa;
        Decimal::from_parts((a - b).abs(), scale)
    }

    /// Whether `|self| < 10^(−k)` for a non-negative `k`.
    pub fn is_below_pow10(&self, k: u32) -> bool {
        // |m|/10^s < 10^-k  <=>  |m|·10^k < 10^s
        if k > self.scale {
            return self.mantissa.is_zero();
        }
        self.mantissa.abs() < pow10(self.scale - k)
    }

    /// Scientific notation with `sig` significant digits, e.g. `3.74e-71`; `0` for zero.
    pub fn to_scientific(&self, sig: usize) -> String {
        if self.mantissa.is_zero() {
            return "0".to_string();
        }
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let digits = self.mantissa.abs().to_string();
        let exp = digits.len() as i64 - 1 - self.scale as i64;
        let sig = sig.max(1).min(digits.len());
        let (lead, rest) = digits[..sig].split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{exp}")
        } else {
            format!("{sign}{lead}.{rest}e{exp}")
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mantissa.sign() == Sign::Minus {
            "-"
        } else {
            ""
        };
        let digits = self.mantissa.abs().to_string();
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int_part, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int_part}.{frac}")
    }
}

/// Decimal expansion of `r` truncated toward zero at `digits` fractional digits.
pub fn dec_of_rational(r: &Rational, digits: u32) -> Decimal {
    let scaled = r.numer() * pow10(digits);
    Decimal::from_parts(scaled / r.denom(), digits)
}

/// `√v` as a certified floor at `digits` fractional digits.
pub fn dec_sqrt(v: &Rational, digits: u32) -> Result<Decimal> {
    if v.is_negative() {
        return Err(Error::Domain(format!("square root of negative value {v}")));
    }
    // floor(√x) = isqrt(floor(x)) for real x ≥ 0
    let scaled = (v.numer() * pow10(2 * digits)).div_floor(v.denom());
    let root = isqrt(&to_biguint(&scaled).unwrap());
    Ok(Decimal::from_parts(root.into(), digits))
}

/// π truncated to `digits` fractional digits, `10 ≤ digits ≤ 10000`.
pub fn dec_pi(digits: u32) -> Result<Decimal> {
    if !(MIN_PI_DIGITS..=MAX_PI_DIGITS).contains(&digits) {
        return Err(Error::Config(format!(
            "pi digits must be in {MIN_PI_DIGITS}..={MAX_PI_DIGITS}, got {digits}"
        )));
    }
    Ok(Decimal::from_parts(pi_floor_scaled(digits), digits))
}

/// `floor(π · 10^digits)`, with no range restriction.
///
/// Uses π/4 = 4·arctan(1/5) − arctan(1/239). Each arctangent partial sum is
/// an exact rational, the alternating tail is bounded by the first omitted
/// term, and the floor is accepted only once both ends of the error interval
/// agree.
pub fn pi_floor_scaled(digits: u32) -> BigInt {
    let scale = pow10(digits);
    let mut guard = digits + 10;
    loop {
        let (atan5, tail5) = arctan_inv(5, guard + 2);
        let (atan239, tail239) = arctan_inv(239, guard + 2);
        let approx =
            atan5 * Rational::from_integer(16.into()) - atan239 * Rational::from_integer(4.into());
        let err =
            tail5 * Rational::from_integer(16.into()) + tail239 * Rational::from_integer(4.into());
        let lo = ((&approx - &err) * Rational::from_integer(scale.clone())).floor();
        let hi = ((&approx + &err) * Rational::from_integer(scale.clone())).floor();
        if lo == hi {
            return lo.to_integer();
        }
        guard += 10;
    }
}

/// Partial sum of arctan(1/m) with enough terms that the first omitted term
/// is below `10^(−digits)`; returns the sum and that term.
fn arctan_inv(m: u32, digits: u32) -> (Rational, Rational) {
    let terms = ((digits as f64) / (2.0 * (m as f64).log10())).ceil() as u64 + 2;
    let mb = BigInt::from(m);
    let m2 = &mb * &mb;
    let (p, q) = arctan_split(0, terms, &m2);
    // Σ_{k<K} (−1)^k m^{2(K−1−k)}/(2k+1) = p/q, then divide by m^{2K−1}
    let sum = Rational::new(p, q * mb.pow((2 * terms - 1) as u32));
    let next = 2 * terms + 1;
    let tail = Rational::new(BigInt::one(), BigInt::from(next) * mb.pow(next as u32));
    (sum, tail)
}

/// Binary splitting of Σ_{k=a}^{b−1} (−1)^k m2^(b−1−k)/(2k+1) as (p, q).
fn arctan_split(a: u64, b: u64, m2: &BigInt) -> (BigInt, BigInt) {
    if b - a == 1 {
        let sign = if a.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        return (sign, BigInt::from(2 * a + 1));
    }
    let mid = (a + b) / 2;
    let (p1, q1) = arctan_split(a, mid, m2);
    let (p2, q2) = arctan_split(mid, b, m2);
    let shift = m2.pow((b - mid) as u32);
    (p1 * shift * &q2 + p2 * &q1, q1 * q2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use proptest::prelude::*;

    #[test]
    fn pi_ten_digits() {
        let pi = dec_pi(10).unwrap();
        assert_eq!(pi.to_string(), "3.1415926535");
    }

    #[test]
    fn pi_range_checked() {
        assert!(matches!(dec_pi(9), Err(Error::Config(_))));
        assert!(matches!(dec_pi(10_001), Err(Error::Config(_))));
    }

    #[test]
    fn pi_precision_monotone() {
        let p10 = dec_pi(10).unwrap();
        let p20 = dec_pi(20).unwrap();
        assert_eq!(p20.truncate(10), p10);
        let p100 = dec_pi(100).unwrap();
        let p120 = dec_pi(120).unwrap();
        assert_eq!(p120.truncate(100), p100);
    }

    #[test]
    fn sqrt_examples() {
        let two = dec_sqrt(&rat(4, 1), 25).unwrap();
        assert_eq!(two.to_rational(), rat(2, 1));
        assert_eq!(
            dec_sqrt(&rat(2, 1), 10).unwrap().to_string(),
            "1.4142135623"
        );
        let s = dec_sqrt(&rat(1025, 1024), 20).unwrap().to_rational();
        let resid = (&s * &s - rat(1025, 1024)).abs();
        assert!(resid < Rational::new(1.into(), BigInt::from(10).pow(19)));
        assert!(matches!(dec_sqrt(&rat(-1, 1), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn rational_expansions() {
        assert_eq!(dec_of_rational(&rat(1, 5), 5).to_string(), "0.20000");
        assert_eq!(dec_of_rational(&rat(-1, 3), 5).to_string(), "-0.33333");
        assert_eq!(
            dec_of_rational(&rat(61633, 1), 5).to_string(),
            "61633.00000"
        );
    }

    #[test]
    fn scientific_and_threshold() {
        let d = Decimal::from_parts(BigInt::from(374), 73);
        assert_eq!(d.to_scientific(3), "3.74e-71");
        assert!(d.is_below_pow10(70));
        assert!(!d.is_below_pow10(71));
        assert_eq!(Decimal::from_parts(BigInt::zero(), 5).to_scientific(3), "0");
        let big = Decimal::from_parts(BigInt::from(10234), 0);
        assert_eq!(big.to_scientific(2), "1.0e4");
    }

    proptest! {
        #[test]
        fn sqrt_square_brackets_input(n in 0u64..1_000_000, d in 1u64..10_000, digits in 10u32..40) {
            let v = Rational::new(n.into(), d.into());
            let s = dec_sqrt(&v, digits).unwrap().to_rational();
            let next = &s + Rational::new(1.into(), BigInt::from(10).pow(digits));
            prop_assert!(&s * &s <= v && v < &next * &next);
        }
    }
}
