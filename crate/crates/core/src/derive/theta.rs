use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactmath::rational_pow;
use crate::poly::superscript;
use crate::{Error, Polynomial, Rational, Result};

/// Integer polynomial in `(n, x)`; `coeffs[i][j]` multiplies `nⁱ xʲ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<BigInt>>,
}

impl BivariatePoly {
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let mut p = BivariatePoly {
            coeffs: rows
                .iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(Vec::is_empty) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, n_pow: usize, x_pow: usize) -> BigInt {
        self.coeffs
            .get(n_pow)
            .and_then(|row| row.get(x_pow))
            .cloned()
            .unwrap_or_default()
    }

    /// Specializes `x` to a rational, giving a polynomial in `n`.
    pub fn at_x(&self, x: &Rational) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (j, c)| {
                        acc + Rational::from_integer(c.clone()) * rational_pow(x, j as u32)
                    })
            })
            .collect();
        Polynomial::new(coeffs)
    }

    fn add_term(&mut self, i: usize, j: usize, c: BigInt) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, Vec::new());
        }
        let row = &mut self.coeffs[i];
        if row.len() <= j {
            row.resize(j + 1, BigInt::zero());
        }
        row[j] += c;
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            for j in 0..self.coeffs[i].len() {
                let c = &self.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                let mut mono = String::new();
                if j > 0 {
                    mono.push('x');
                    if j > 1 {
                        mono.push_str(&superscript(j));
                    }
                }
                if i > 0 {
                    mono.push('n');
                    if i > 1 {
                        mono.push_str(&superscript(i));
                    }
                }
                let mag = c.abs();
                let body = if mag.is_one() && !mono.is_empty() {
                    mono
                } else {
                    format!("{mag}{mono}")
                };
                match (first, c.is_negative()) {
                    (true, true) => write!(f, "−{body}")?,
                    (true, false) => write!(f, "{body}")?,
                    (false, true) => write!(f, " − {body}")?,
                    (false, false) => write!(f, " + {body}")?,
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `N_k(n, x)` with `θ^k{xⁿ/(1−x)ⁿ⁺¹} = N_k/(1−x)^(k+1) · (x/(1−x))ⁿ`, for `k ≤ 3`.
///
/// Built from `N₀ = 1` by `N_{k+1} = x(1−x)∂ₓN_k + (k+1)x·N_k + n·N_k`.
pub fn theta_numerator(k: usize) -> Result<BivariatePoly> {
    if k > 3 {
        return Err(Error::UnsupportedOrder(format!(
            "θ^{k} numerator (maximum order is 3)"
        )));
    }
    let mut cur = BivariatePoly::from_rows(&[&[1]]);
    for step in 0..k {
        let mut next = BivariatePoly { coeffs: Vec::new() };
        for (i, row) in cur.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if j > 0 {
                    // x(1−x)·j·x^(j−1) = j·xʲ − j·x^(j+1)
                    let jc = c * BigInt::from(j);
                    next.add_term(i, j, jc.clone());
                    next.add_term(i, j + 1, -jc);
                }
                next.add_term(i, j + 1, c * BigInt::from(step + 1));
                next.add_term(i + 1, j, c.clone());
            }
        }
        next.trim();
        cur = next;
    }
    Ok(cur)
}

/// For the binomial kernel, `Σ_k P_k θ^k[μwⁿ](x₀) / (μ(x₀)w₀ⁿ)` written through
/// the numerator table: `Σ_k P_k N_k(n, x₀) / (1−x₀)^k`.
pub fn binomial_theta_path(p: &Polynomial, x0: &Rational) -> Result<Polynomial> {
    let one_minus = Rational::one() - x0;
    if one_minus.is_zero() {
        return Err(Error::SingularBasepoint(
            "x = 1 is a pole of 1/(1−x)".into(),
        ));
    }
    let mut acc = Polynomial::zero();
    for (k, pk) in p.coeffs().iter().enumerate() {
        if pk.is_zero() {
            continue;
        }
        let nk = theta_numerator(k)?.at_x(x0);
        let scale = pk / rational_pow(&one_minus, k as u32);
        acc = acc.add(&nk.scale(&scale));
    }
    Ok(acc)
}
