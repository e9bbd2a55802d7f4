use crate::scalar::{Field, SqrtField};
use crate::{Error, Rational, Result};

/// Highest Taylor order a jet may carry.
pub const MAX_JET_ORDER: usize = 4;

/// Truncated Taylor expansion `Σ_{k ≤ order} c_k (x − x₀)^k` at a rational basepoint.
///
/// Arithmetic follows truncated power-series rules; combining two jets keeps
/// the smaller order. [`Jet::theta`] applies `θ = x·d/dx` and drops one order.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S> {
    basepoint: Rational,
    coeffs: Vec<S>,
}

impl<S: Field> Jet<S> {
    pub fn new(basepoint: Rational, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > MAX_JET_ORDER + 1 {
            return Err(Error::UnsupportedOrder(format!(
                "jet needs 1..={} coefficients, got {}",
                MAX_JET_ORDER + 1,
                coeffs.len()
            )));
        }
        Ok(Jet { basepoint, coeffs })
    }

    pub fn constant(basepoint: Rational, c: S, order: usize) -> Result<Self> {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = c;
        Jet::new(basepoint, coeffs)
    }

    /// The identity function `x` expanded at the basepoint.
    pub fn variable(basepoint: Rational, order: usize) -> Result<Self> {
        let mut jet = Jet::constant(basepoint.clone(), S::from_rational(&basepoint), order)?;
        if order >= 1 {
            jet.coeffs[1] = S::one();
        }
        Ok(jet)
    }

    pub fn basepoint(&self) -> &Rational {
        &self.basepoint
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    fn paired(&self, other: &Self) -> usize {
        assert_eq!(
            self.basepoint, other.basepoint,
            "jets at different basepoints"
        );
        self.order().min(other.order())
    }

    fn with(&self, coeffs: Vec<S>) -> Self {
        Jet {
            basepoint: self.basepoint.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.paired(other);
        self.with(
            (0..=n)
                .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.paired(other);
        self.with(
            (0..=n)
                .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
                .collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        self.with(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.paired(other);
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(S::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        self.with(coeffs)
    }

    /// `1/self`; fails when the value at the basepoint vanishes.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.value().clone();
        if c0.is_zero() {
            return Err(Error::SingularBasepoint(format!(
                "reciprocal of a jet vanishing at x = {}",
                self.basepoint
            )));
        }
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(S::one() / c0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(S::zero(), |acc, i| {
                acc + self.coeffs[i].clone() * out[k - i].clone()
            });
            out.push(-s / c0.clone());
        }
        Ok(self.with(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Jet::constant(self.basepoint.clone(), S::one(), self.order())?;
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `θf = x·f′`, one order lower. An order-0 jet has no derivative.
    pub fn theta(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::UnsupportedOrder("θ of an order-0 jet".into()));
        }
        let x0 = S::from_rational(&self.basepoint);
        let coeffs = (0..self.order())
            .map(|k| {
                let kk = S::from_i64(k as i64);
                let next = S::from_i64(k as i64 + 1) * self.coeffs[k + 1].clone();
                x0.clone() * next + kk * self.coeffs[k].clone()
            })
            .collect();
        Ok(self.with(coeffs))
    }
}

impl<S: SqrtField> Jet<S> {
    /// Principal square root; the value at the basepoint must have a root in `S`.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.value().sqrt_checked().ok_or_else(|| {
            Error::Domain(format!(
                "jet square root of {:?} at x = {}",
                self.value(),
                self.basepoint
            ))
        })?;
        if c0.is_zero() && self.order() > 0 {
            return Err(Error::SingularBasepoint(format!(
                "square root branch point at x = {}",
                self.basepoint
            )));
        }
        let two_c0 = S::from_i64(2) * c0.clone();
        let mut out = vec![c0];
        for k in 1..self.coeffs.len() {
            let s = (1..k).fold(S::zero(), |acc, i| {
                acc + out[i].clone() * out[k - i].clone()
            });
            out.push((self.coeffs[k].clone() - s) / two_c0.clone());
        }
        Ok(self.with(out))
    }
}
