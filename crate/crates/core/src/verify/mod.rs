//! Numeric verification of catalog identities at a requested precision.
//!
//! The left side is an exact rational partial sum converted to decimal once;
//! the right side is built from a certified π floor and square root. The
//! number of terms comes from a geometric tail bound whose growth constant is
//! estimated from the computed terms.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::catalog::{Formula, RhsConstant};
use crate::exactmath::{dec_of_rational, dec_sqrt, ln_abs, pi_floor_scaled, Decimal};
use crate::sequences::TermTable;
use crate::{Error, Rational, Result};

/// Lowest precision `verify_identity` accepts.
pub const MIN_VERIFY_DIGITS: u32 = 20;
/// Fractional guard digits carried by `eval_lhs` and `eval_rhs` results.
pub const GUARD_DIGITS: u32 = 10;

const LN_10: f64 = std::f64::consts::LN_10;

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub name: String,
    pub digits: u32,
    pub terms: usize,
    pub lhs: Decimal,
    pub rhs: Decimal,
    pub residual: Decimal,
    pub pass: bool,
    pub elapsed: Duration,
}

/// Growth fit `|a_n| ≤ C·gⁿ`, stored as `ln C` and `ln g`.
#[derive(Clone, Copy, Debug)]
struct Growth {
    ln_c: f64,
    ln_g: f64,
}

/// Fits the growth of `values[0..=k]` from the n-th roots and the trailing
/// ratios, then pads `C` by a factor of 4.
fn fit_growth(values: &[Rational], k: usize) -> Growth {
    let logs: Vec<f64> = values[..=k].iter().map(ln_abs).collect();
    let mut ln_g = f64::NEG_INFINITY;
    for n in (k / 2).max(1)..=k {
        if logs[n].is_finite() {
            ln_g = ln_g.max(logs[n] / n as f64);
        }
    }
    for n in k.saturating_sub(4).max(1)..=k {
        if logs[n].is_finite() && logs[n - 1].is_finite() {
            ln_g = ln_g.max(logs[n] - logs[n - 1]);
        }
    }
    if !ln_g.is_finite() {
        ln_g = 0.0;
    }
    let ln_c = logs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(n, l)| l - n as f64 * ln_g)
        .fold(0.0f64, f64::max);
    Growth {
        ln_c: ln_c + 4f64.ln(),
        ln_g,
    }
}

/// Smallest `N` with `Σ_{n>N} S·C·nᵈ·rⁿ < 10^(−target)` for `ln r < 0`.
fn tail_cutoff(growth: Growth, ln_x: f64, ln_poly: f64, degree: usize, target: f64) -> usize {
    let ln_r = growth.ln_g + ln_x;
    let ln_limit = -target * LN_10;
    let d = degree as f64;
    let mut n = 1usize;
    loop {
        let m = (n + 1) as f64;
        // geometric majorant from term n+1 on: ratio r·((m+1)/m)^d
        let ln_ratio = ln_r + d * ((m + 1.0) / m).ln();
        if ln_ratio < 0.0 {
            let first = ln_poly + growth.ln_c + d * m.ln() + m * ln_r;
            let ln_tail = first - (1.0 - ln_ratio.exp()).ln();
            if ln_tail < ln_limit {
                return n;
            }
        }
        n += 1;
    }
}

fn rate_is_divergent(growth: Growth, ln_x: f64) -> bool {
    growth.ln_g + ln_x >= -1e-9
}

fn required_terms_with(f: &Formula, digits: u32, table: &mut TermTable) -> Result<usize> {
    if f.argument.is_zero() {
        return Ok(1);
    }
    let ln_x = ln_abs(&f.argument);
    let ln_poly = ln_abs(&f.poly.abs_coeff_sum()).max(0.0);
    let degree = f.poly.degree().unwrap_or(0);
    let target = digits as f64 + 5.0;
    let mut k = 20usize;
    let mut divergent_checks = 0;
    loop {
        table.ensure(k)?;
        let growth = fit_growth(table.values(), k);
        if rate_is_divergent(growth, ln_x) {
            divergent_checks += 1;
            if divergent_checks >= 4 {
                return Err(Error::Divergence(format!(
                    "{}: |a_(n+1)·x₀/a_n| stays ≥ 1 through n = {k}",
                    f.name
                )));
            }
            k *= 2;
            continue;
        }
        let n = tail_cutoff(growth, ln_x, ln_poly, degree, target);
        if k >= (n / 4).max(20) {
            return Ok(2 * n);
        }
        k = n / 4;
    }
}

/// Number of terms for a tail below `10^(−digits−5)`, including a ×2 safety factor.
pub fn required_terms(f: &Formula, digits: u32) -> Result<usize> {
    let mut table = TermTable::new(f.sequence.clone())?;
    required_terms_with(f, digits, &mut table)
}

/// Exact `Σ_{n<terms} a_n·P(n)·x₀ⁿ`.
pub fn partial_sum_with(f: &Formula, terms: usize, table: &mut TermTable) -> Result<Rational> {
    if terms == 0 {
        return Ok(Rational::zero());
    }
    table.ensure(terms - 1)?;
    let mut sum = Rational::zero();
    let mut power = Rational::from_integer(1.into());
    for (n, a) in table.values()[..terms].iter().enumerate() {
        sum += a * f.poly.eval_at(n as u64) * &power;
        power *= &f.argument;
    }
    Ok(sum)
}

pub fn partial_sum(f: &Formula, terms: usize) -> Result<Rational> {
    let mut table = TermTable::new(f.sequence.clone())?;
    partial_sum_with(f, terms, &mut table)
}

/// Left side at `digits` (plus guard digits), with the number of terms used.
pub fn eval_lhs(f: &Formula, digits: u32) -> Result<(Decimal, usize)> {
    let mut table = TermTable::new(f.sequence.clone())?;
    let terms = required_terms_with(f, digits, &mut table)?;
    let sum = partial_sum_with(f, terms, &mut table)?;
    Ok((dec_of_rational(&sum, digits + GUARD_DIGITS), terms))
}

/// `q·√s/π^k` at `digits` (plus guard digits).
pub fn eval_rhs(c: &RhsConstant, digits: u32) -> Decimal {
    let out = digits + GUARD_DIGITS;
    let q = c.q();
    let s = Rational::from_integer(c.radicand().clone().into());
    let magnitude = ((ln_abs(q) + 0.5 * ln_abs(&s)) / LN_10).max(0.0).ceil() as u32;
    let work = out + magnitude + 12;
    let scale = BigInt::from(10u32).pow(work);
    let root = dec_sqrt(&s, work).expect("radicand is positive");
    let pi = pi_floor_scaled(work);
    // q·(R/10^w)/(P/10^w)^k
    let value = q * Rational::new(
        root.mantissa() * scale.pow(c.pi_power() - 1),
        pi.pow(c.pi_power()),
    );
    dec_of_rational(&value, out)
}

/// Evaluates both sides; passes iff `|lhs − rhs| < 10^(−(digits−10))`.
pub fn verify_identity(f: &Formula, digits: u32) -> Result<VerifyReport> {
    if digits < MIN_VERIFY_DIGITS {
        return Err(Error::Config(format!(
            "verification needs at least {MIN_VERIFY_DIGITS} digits, got {digits}"
        )));
    }
    let start = Instant::now();
    let (lhs, terms) = eval_lhs(f, digits)?;
    let rhs = eval_rhs(&f.rhs, digits);
    let residual = lhs.abs_diff(&rhs);
    let pass = residual.is_below_pow10(digits - 10);
    Ok(VerifyReport {
        name: f.name.clone(),
        digits,
        terms,
        lhs,
        rhs,
        residual,
        pass,
        elapsed: start.elapsed(),
    })
}

/// Verifies formulas in parallel; results keep the input order.
pub fn verify_all(formulas: &[Formula], digits: u32) -> Vec<Result<VerifyReport>> {
    formulas
        .par_iter()
        .map(|f| verify_identity(f, digits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::exactmath::{dec_pi, rat};
    use num_traits::Signed;

    fn pi_oracle(q: i64, k: u32, digits: u32) -> Decimal {
        let pi = dec_pi(digits + 20).unwrap().to_rational();
        dec_of_rational(&(rat(q, 1) / num_traits::pow(pi, k as usize)), digits)
    }

    #[test]
    fn required_terms_ranges() {
        let c = builtin_catalog();
        let n = required_terms(c.get("id1-binomial").unwrap(), 60).unwrap();
        assert!((85..=260).contains(&n), "{n}");
        let n = required_terms(c.get("id9-monster").unwrap(), 60).unwrap();
        assert!((60..=110).contains(&n), "{n}");
        let mut f = c.get("id1").unwrap().clone();
        f.argument = rat(0, 1);
        assert_eq!(required_terms(&f, 60).unwrap(), 1);
    }

    #[test]
    fn divergence_detected() {
        let mut f = builtin_catalog().get("id8").unwrap().clone();
        f.argument = rat(1, 2);
        assert!(matches!(required_terms(&f, 60), Err(Error::Divergence(_))));
    }

    #[test]
    fn lhs_examples() {
        let c = builtin_catalog();
        let (lhs, _) = eval_lhs(c.get("id1").unwrap(), 30).unwrap();
        assert_eq!(lhs.truncate(28), pi_oracle(8, 2, 28));
        let (lhs, _) = eval_lhs(c.get("gourevich").unwrap(), 30).unwrap();
        assert_eq!(lhs.truncate(28), pi_oracle(32, 3, 28));
        assert_eq!(
            partial_sum(c.get("id1-binomial").unwrap(), 1).unwrap(),
            rat(-15, 1)
        );
    }

    #[test]
    fn rhs_examples() {
        let c = builtin_catalog();
        let r = eval_rhs(&c.get("id1-binomial").unwrap().rhs, 20);
        assert!(r.abs_diff(&pi_oracle(50, 2, 30)).is_below_pow10(29));
        let r = eval_rhs(&c.get("id1").unwrap().rhs, 20);
        assert!(r.abs_diff(&pi_oracle(8, 2, 30)).is_below_pow10(29));
        let r = eval_rhs(&c.get("id9").unwrap().rhs, 20).to_rational();
        let pi = dec_pi(40).unwrap().to_rational();
        let approx = r * &pi * &pi / rat(64, 1);
        let sq = &approx * &approx - rat(2, 1);
        assert!(sq.abs() < rat(1, 10i64.pow(15)));
    }

    #[test]
    fn verify_examples() {
        let c = builtin_catalog();
        let r = verify_identity(c.get("id1-binomial").unwrap(), 60).unwrap();
        assert!(r.pass && r.residual.is_below_pow10(50));
        let r = verify_identity(c.get("id3-suspect").unwrap(), 40).unwrap();
        assert!(!r.pass);
        let r = verify_identity(c.get("z2-binomial").unwrap(), 60).unwrap();
        assert!(r.pass);
        assert!(matches!(
            verify_identity(c.get("id1").unwrap(), 19),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn truncation_is_honest() {
        let c = builtin_catalog();
        for name in ["id1", "id8-binomial", "z1"] {
            let f = c.get(name).unwrap();
            let n = required_terms(f, 40).unwrap();
            let a = partial_sum(f, n).unwrap();
            let b = partial_sum(f, 2 * n).unwrap();
            let bound = Rational::new(1.into(), BigInt::from(10).pow(45));
            assert!((a - b).abs() < bound, "{name}");
        }
    }

    #[test]
    fn precision_monotone() {
        let f = builtin_catalog().get("id4").unwrap().clone();
        for digits in [20, 40, 80] {
            assert!(verify_identity(&f, digits).unwrap().pass);
        }
    }
}
