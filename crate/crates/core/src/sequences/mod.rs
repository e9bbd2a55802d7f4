//! Exact term generators for the sequence families and their transforms.
//!
//! A [`SequenceSpec`] is a closed, immutable description of a sequence; a
//! [`TermTable`] memoizes its terms. Transform wrappers hold exactly one inner
//! spec and compute each term from the inner terms by a finite sum.

mod table;
mod transforms;

pub use table::{term, terms_prefix, TermTable, DEFAULT_TERM_LIMIT};
pub use transforms::{
    ballot_transform, binomial_transform, central_binomial_convolution, inverse_ballot,
    inverse_central_binomial, riordan_transform,
};

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactmath::rat;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    /// `scale^n · Π_i (α_i)_n / n!^k`.
    PochhammerQuotient {
        params: Vec<Rational>,
        factorial_power: u32,
        scale: Rational,
    },
    /// `C(2n,n)^outer · scale^n · Σ_k C(2k,k)^inner C(2n−2k,n−k)^inner`.
    BinomialSelfConvolution {
        outer_power: u32,
        inner_power: u32,
        scale: Rational,
    },
    /// `C(2n,n)^power_2n · C(4n,2n)^power_4n`.
    CentralBinomialProduct { power_2n: u32, power_4n: u32 },
    /// `C(2n,n) C(4n,2n) Σ_k 16^(n−k) C(2k,k)³ C(2n−2k,n−k)`.
    ZudilinDomb,
    /// `a_n / (n + 1/2)`.
    HalfWeightWrap(Box<SequenceSpec>),
    /// `Σ_j (−1)^j C(n,j) a_j`.
    BinomialTransformWrap(Box<SequenceSpec>),
    /// `Σ_j (−1)^j C(n+p, j+p) a_j`.
    RiordanTransformWrap {
        p: Rational,
        inner: Box<SequenceSpec>,
    },
    /// `Σ_k C(2k,k) a_(n−k)`.
    CentralBinomialConvWrap(Box<SequenceSpec>),
    /// `Σ_(k ≤ n/2) (C(n,k) − C(n,k−1)) a_(n−2k)`.
    BallotQuadraticWrap(Box<SequenceSpec>),
    /// `(2n+1) C(2n,n) 4^(−n) Σ_k (−256)^(−k) C(n,k) C(2k,k)⁴ / (2k+1)`,
    /// the p = 1/2 Riordan transform of `(1/2)_n⁵/n!⁵`.
    ClosedFormHalfShift,
    /// `C(2n,n) Σ_k (−256)^(−k) C(n,k) C(2k,k)⁴`,
    /// equal to `4^n` times the p = −1/2 Riordan transform of `(1/2)_n⁵/n!⁵`.
    ClosedFormNegHalfShift,
    /// `Σ_k C(2k,k) C(2n−2k,n−k)⁵`.
    ClosedFormSqrt,
}

impl SequenceSpec {
    pub fn pochhammer(params: Vec<Rational>, factorial_power: u32, scale: Rational) -> Self {
        SequenceSpec::PochhammerQuotient {
            params,
            factorial_power,
            scale,
        }
    }

    /// `(1/2)_n⁵ / n!⁵`.
    pub fn half_fifth() -> Self {
        Self::pochhammer(vec![rat(1, 2); 5], 5, Rational::one())
    }

    /// `C(2n,n)²C(4n,2n)³/(n+1/2)`.
    pub fn half_weight_quartic() -> Self {
        Self::half_weight(SequenceSpec::CentralBinomialProduct {
            power_2n: 2,
            power_4n: 3,
        })
    }

    /// Binomial transform of `inner`; a second application cancels the first.
    pub fn binomial_transform(inner: SequenceSpec) -> Self {
        match inner {
            SequenceSpec::BinomialTransformWrap(inner) => *inner,
            other => SequenceSpec::BinomialTransformWrap(Box::new(other)),
        }
    }

    pub fn riordan(inner: SequenceSpec, p: Rational) -> Self {
        SequenceSpec::RiordanTransformWrap {
            p,
            inner: Box::new(inner),
        }
    }

    pub fn half_weight(inner: SequenceSpec) -> Self {
        SequenceSpec::HalfWeightWrap(Box::new(inner))
    }

    pub fn central_binomial_conv(inner: SequenceSpec) -> Self {
        SequenceSpec::CentralBinomialConvWrap(Box::new(inner))
    }

    pub fn ballot(inner: SequenceSpec) -> Self {
        SequenceSpec::BallotQuadraticWrap(Box::new(inner))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            SequenceSpec::PochhammerQuotient { .. } => "PochhammerQuotient",
            SequenceSpec::BinomialSelfConvolution { .. } => "BinomialSelfConvolution",
            SequenceSpec::CentralBinomialProduct { .. } => "CentralBinomialProduct",
            SequenceSpec::ZudilinDomb => "ZudilinDomb",
            SequenceSpec::HalfWeightWrap(_) => "HalfWeightWrap",
            SequenceSpec::BinomialTransformWrap(_) => "BinomialTransformWrap",
            SequenceSpec::RiordanTransformWrap { .. } => "RiordanTransformWrap",
            SequenceSpec::CentralBinomialConvWrap(_) => "CentralBinomialConvWrap",
            SequenceSpec::BallotQuadraticWrap(_) => "BallotQuadraticWrap",
            SequenceSpec::ClosedFormHalfShift => "ClosedFormHalfShift",
            SequenceSpec::ClosedFormNegHalfShift => "ClosedFormNegHalfShift",
            SequenceSpec::ClosedFormSqrt => "ClosedFormSqrt",
        }
    }

    pub fn inner(&self) -> Option<&SequenceSpec> {
        match self {
            SequenceSpec::HalfWeightWrap(inner)
            | SequenceSpec::BinomialTransformWrap(inner)
            | SequenceSpec::CentralBinomialConvWrap(inner)
            | SequenceSpec::BallotQuadraticWrap(inner)
            | SequenceSpec::RiordanTransformWrap { inner, .. } => Some(inner),
            _ => None,
        }
    }

    /// Whether the sequence is obtained from another by one of the transforms
    /// (displayed as `b_n` rather than `a_n`).
    pub fn is_transformed(&self) -> bool {
        matches!(
            self,
            SequenceSpec::BinomialTransformWrap(_)
                | SequenceSpec::RiordanTransformWrap { .. }
                | SequenceSpec::CentralBinomialConvWrap(_)
                | SequenceSpec::BallotQuadraticWrap(_)
                | SequenceSpec::ClosedFormHalfShift
                | SequenceSpec::ClosedFormNegHalfShift
                | SequenceSpec::ClosedFormSqrt
        )
    }

    /// Nesting depth of wrapper kinds.
    pub fn depth(&self) -> usize {
        self.inner().map_or(0, |inner| 1 + inner.depth())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::PochhammerQuotient {
                params,
                factorial_power,
                scale,
            } => {
                if *factorial_power == 0 || params.len() != *factorial_power as usize {
                    return Err(Error::InvalidInput(format!(
                        "PochhammerQuotient has {} parameters but factorial power {}",
                        params.len(),
                        factorial_power
                    )));
                }
                if params.iter().any(|a| !a.is_positive()) {
                    return Err(Error::InvalidInput(
                        "Pochhammer parameters must be positive".into(),
                    ));
                }
                if scale.is_zero() {
                    return Err(Error::InvalidInput(
                        "geometric scale must be nonzero".into(),
                    ));
                }
                Ok(())
            }
            SequenceSpec::BinomialSelfConvolution { scale, .. } if scale.is_zero() => Err(
                Error::InvalidInput("geometric scale must be nonzero".into()),
            ),
            SequenceSpec::RiordanTransformWrap { p, inner } => {
                let den = p.denom();
                if !(den.is_one() || *den == 2.into()) {
                    return Err(Error::InvalidInput(format!(
                        "Riordan shift p = {p} must have denominator 1 or 2"
                    )));
                }
                inner.validate()
            }
            other => other.inner().map_or(Ok(()), SequenceSpec::validate),
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::PochhammerQuotient {
                params,
                factorial_power,
                scale,
            } => {
                if !scale.is_one() {
                    write!(f, "({scale})ⁿ·")?;
                }
                let ps: Vec<String> = params.iter().map(|a| format!("({a})_n")).collect();
                write!(f, "{}/n!^{}", ps.join(""), factorial_power)
            }
            SequenceSpec::BinomialSelfConvolution {
                outer_power,
                inner_power,
                scale,
            } => {
                if !scale.is_one() {
                    write!(f, "({scale})ⁿ·")?;
                }
                if *outer_power > 0 {
                    write!(f, "C(2n,n)^{outer_power}·")?;
                }
                write!(f, "Σ_k C(2k,k)^{inner_power} C(2n−2k,n−k)^{inner_power}")
            }
            SequenceSpec::CentralBinomialProduct { power_2n, power_4n } => {
                write!(f, "C(2n,n)^{power_2n}·C(4n,2n)^{power_4n}")
            }
            SequenceSpec::ZudilinDomb => {
                write!(f, "C(2n,n)C(4n,2n)Σ_k 16^(n−k) C(2k,k)³ C(2n−2k,n−k)")
            }
            SequenceSpec::HalfWeightWrap(inner) => write!(f, "[{inner}]/(n+1/2)"),
            SequenceSpec::BinomialTransformWrap(inner) => {
                write!(f, "Σ_j (−1)^j C(n,j)·[{inner}]_j")
            }
            SequenceSpec::RiordanTransformWrap { p, inner } => {
                write!(f, "Σ_j (−1)^j C(n+{p},j+{p})·[{inner}]_j")
            }
            SequenceSpec::CentralBinomialConvWrap(inner) => {
                write!(f, "Σ_k C(2k,k)·[{inner}]_(n−k)")
            }
            SequenceSpec::BallotQuadraticWrap(inner) => {
                write!(f, "Σ_k (C(n,k)−C(n,k−1))·[{inner}]_(n−2k)")
            }
            SequenceSpec::ClosedFormHalfShift => {
                write!(
                    f,
                    "(2n+1)C(2n,n)4^(−n) Σ_k (−256)^(−k) C(n,k) C(2k,k)⁴/(2k+1)"
                )
            }
            SequenceSpec::ClosedFormNegHalfShift => {
                write!(f, "C(2n,n) Σ_k (−256)^(−k) C(n,k) C(2k,k)⁴")
            }
            SequenceSpec::ClosedFormSqrt => write!(f, "Σ_k C(2k,k) C(2n−2k,n−k)⁵"),
        }
    }
}

/// `C(n+p, j+p) = Γ(n+p+1) / (Γ(j+p+1) Γ(n−j+1))` as the exact product
/// `(j+p+1)(j+p+2)…(n+p) / (n−j)!`; zero when `j > n`.
pub fn gen_binomial(n: u64, j: u64, p: &Rational) -> Rational {
    if j > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 1..=(n - j) {
        acc *= (Rational::from_integer((j + i).into()) + p) / Rational::from_integer(i.into());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(3, 1, &Rational::zero()), rat(3, 1));
        assert_eq!(gen_binomial(1, 0, &rat(1, 2)), rat(3, 2));
        assert_eq!(gen_binomial(1, 0, &rat(-1, 2)), rat(1, 2));
        assert_eq!(gen_binomial(2, 5, &rat(1, 2)), Rational::zero());
    }

    #[test]
    fn gen_binomial_matches_gamma_ratio() {
        // Γ(x+1)/Γ(x+1−m) for half-integers, written out with Γ(1/2) cancelled
        fn gamma_half(twice: i64) -> Rational {
            // Γ(twice/2) / Γ(1/2) for odd twice ≥ 1, Γ(k) for even twice
            if twice % 2 == 0 {
                (1..twice / 2).map(|k| rat(k, 1)).product()
            } else {
                (0..(twice - 1) / 2).map(|k| rat(2 * k + 1, 2)).product()
            }
        }
        for n in 0..8i64 {
            for j in 0..=n {
                let lhs = gen_binomial(n as u64, j as u64, &rat(1, 2));
                let rhs = gamma_half(2 * n + 3)
                    / (gamma_half(2 * j + 3)
                        * (1..=n - j).map(|k| rat(k, 1)).product::<Rational>());
                assert_eq!(lhs, rhs, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn double_binomial_wrap_cancels() {
        let s = SequenceSpec::half_fifth();
        let twice = SequenceSpec::binomial_transform(SequenceSpec::binomial_transform(s.clone()));
        assert_eq!(twice, s);
    }

    #[test]
    fn validation() {
        let bad = SequenceSpec::pochhammer(vec![rat(1, 2); 4], 5, Rational::one());
        assert!(bad.validate().is_err());
        let bad = SequenceSpec::riordan(SequenceSpec::half_fifth(), rat(1, 3));
        assert!(bad.validate().is_err());
        assert!(
            SequenceSpec::riordan(SequenceSpec::half_fifth(), rat(-1, 2))
                .validate()
                .is_ok()
        );
    }
}
