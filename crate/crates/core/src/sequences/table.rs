use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::transforms::{
    ballot_term, binomial_transform_term, central_binomial_term, riordan_term,
};
use super::SequenceSpec;
use crate::exactmath::{binomial, central_binomials};
use crate::{Error, Rational, Result};

/// Largest prefix a table will build unless told otherwise.
pub const DEFAULT_TERM_LIMIT: usize = 20_000;

/// Memoized exact terms `a_0, a_1, …` of one sequence.
///
/// Extension only appends; existing entries are never rewritten. A wrapper
/// kind owns the table of its inner sequence.
#[derive(Clone, Debug)]
pub struct TermTable {
    spec: SequenceSpec,
    values: Vec<Rational>,
    inner: Option<Box<TermTable>>,
    // C(2k,k) for k < central.len()
    central: Vec<BigInt>,
    limit: usize,
}

impl TermTable {
    pub fn new(spec: SequenceSpec) -> Result<Self> {
        Self::with_limit(spec, DEFAULT_TERM_LIMIT)
    }

    pub fn with_limit(spec: SequenceSpec, limit: usize) -> Result<Self> {
        spec.validate()?;
        let inner = match spec.inner() {
            Some(inner) => Some(Box::new(TermTable::with_limit(inner.clone(), limit)?)),
            None => None,
        };
        Ok(TermTable {
            spec,
            values: Vec::new(),
            inner,
            central: Vec::new(),
            limit,
        })
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    /// Terms computed so far.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Term `n`, extending the table as needed.
    pub fn get(&mut self, n: usize) -> Result<&Rational> {
        self.ensure(n)?;
        Ok(&self.values[n])
    }

    /// Makes terms `0..=n` available.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        if n >= self.limit {
            return Err(Error::Budget(format!(
                "term {n} requested, limit is {} terms",
                self.limit
            )));
        }
        if n < self.values.len() {
            return Ok(());
        }
        if let Some(inner) = self.inner.as_mut() {
            inner.ensure(n)?;
        }
        let central_needed = match self.spec {
            SequenceSpec::ZudilinDomb | SequenceSpec::CentralBinomialProduct { .. } => 2 * n + 1,
            _ => n + 1,
        };
        if self.central.len() < central_needed {
            self.central = central_binomials(central_needed);
        }
        for k in self.values.len()..=n {
            let next = self.next_term(k);
            self.values.push(next);
        }
        Ok(())
    }

    fn next_term(&self, n: usize) -> Rational {
        let inner = || self.inner.as_ref().unwrap().values();
        match &self.spec {
            SequenceSpec::PochhammerQuotient {
                params,
                factorial_power,
                scale,
            } => {
                if n == 0 {
                    return Rational::one();
                }
                let mut t = &self.values[n - 1] * scale;
                let m = Rational::from_integer((n - 1).into());
                for a in params {
                    t *= a + &m;
                }
                t / Rational::from_integer(BigInt::from(n).pow(*factorial_power))
            }
            SequenceSpec::BinomialSelfConvolution {
                outer_power,
                inner_power,
                scale,
            } => {
                let c = |k: usize| self.central[k].pow(*inner_power);
                // symmetric in k ↔ n−k: pair up the two halves
                let mut sum = BigInt::zero();
                for k in 0..n.div_ceil(2) {
                    sum += c(k) * c(n - k);
                }
                sum *= 2;
                if n.is_multiple_of(2) {
                    sum += c(n / 2).pow(2);
                }
                let outer = self.central[n].pow(*outer_power);
                Rational::from_integer(outer * sum) * num_traits::pow(scale.clone(), n)
            }
            SequenceSpec::CentralBinomialProduct { power_2n, power_4n } => Rational::from_integer(
                self.central[n].pow(*power_2n) * self.central[2 * n].pow(*power_4n),
            ),
            SequenceSpec::ZudilinDomb => {
                let mut sum = BigInt::zero();
                let mut pow16 = BigInt::one();
                for k in (0..=n).rev() {
                    // 16^(n−k) with n−k increasing as k decreases
                    sum += &pow16 * self.central[k].pow(3) * &self.central[n - k];
                    pow16 <<= 4;
                }
                Rational::from_integer(&self.central[n] * &self.central[2 * n] * sum)
            }
            SequenceSpec::HalfWeightWrap(_) => {
                &inner()[n] * Rational::new(2.into(), (2 * n + 1).into())
            }
            SequenceSpec::BinomialTransformWrap(_) => binomial_transform_term(inner(), n),
            SequenceSpec::RiordanTransformWrap { p, .. } => riordan_term(inner(), n, p),
            SequenceSpec::CentralBinomialConvWrap(_) => {
                central_binomial_term(inner(), n, &self.central)
            }
            SequenceSpec::BallotQuadraticWrap(_) => ballot_term(inner(), n),
            SequenceSpec::ClosedFormHalfShift => {
                // Σ_k (−1)^k C(n,k) C(2k,k)⁴ 256^(n−k) / (2k+1), then scale
                let mut sum = Rational::zero();
                for k in 0..=n {
                    let num = binomial(n as i64, k as i64)
                        * self.central[k].pow(4)
                        * (BigInt::one() << (8 * (n - k)));
                    let t = Rational::new(num, (2 * k + 1).into());
                    if k % 2 == 0 {
                        sum += t;
                    } else {
                        sum -= t;
                    }
                }
                let pre = Rational::new(
                    BigInt::from(2 * n + 1) * &self.central[n],
                    BigInt::one() << (10 * n),
                );
                sum * pre
            }
            SequenceSpec::ClosedFormNegHalfShift => {
                let mut sum = BigInt::zero();
                for k in 0..=n {
                    let t = binomial(n as i64, k as i64)
                        * self.central[k].pow(4)
                        * (BigInt::one() << (8 * (n - k)));
                    if k % 2 == 0 {
                        sum += t;
                    } else {
                        sum -= t;
                    }
                }
                Rational::new(&self.central[n] * sum, BigInt::one() << (8 * n))
            }
            SequenceSpec::ClosedFormSqrt => {
                let sum: BigInt = (0..=n)
                    .map(|k| &self.central[k] * self.central[n - k].pow(5))
                    .sum();
                Rational::from_integer(sum)
            }
        }
    }
}

/// Exact term `n` of `spec`.
pub fn term(spec: &SequenceSpec, n: usize) -> Result<Rational> {
    let mut table = TermTable::new(spec.clone())?;
    table.get(n).cloned()
}

/// Table holding terms `0..=n`.
pub fn terms_prefix(spec: &SequenceSpec, n: usize) -> Result<TermTable> {
    let mut table = TermTable::new(spec.clone())?;
    table.ensure(n)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::sequences::{binomial_transform, riordan_transform};

    fn identity8() -> SequenceSpec {
        SequenceSpec::BinomialSelfConvolution {
            outer_power: 2,
            inner_power: 2,
            scale: Rational::one(),
        }
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(&SequenceSpec::half_fifth(), 1).unwrap(), rat(1, 32));
        assert_eq!(term(&identity8(), 1).unwrap(), rat(32, 1));
        let bt = SequenceSpec::binomial_transform(SequenceSpec::half_fifth());
        assert_eq!(term(&bt, 1).unwrap(), rat(31, 32));
        assert_eq!(
            term(&SequenceSpec::ClosedFormNegHalfShift, 1).unwrap(),
            rat(15, 8)
        );
    }

    #[test]
    fn prefix_examples() {
        let t = terms_prefix(&SequenceSpec::half_fifth(), 2).unwrap();
        assert_eq!(t.values(), &[rat(1, 1), rat(1, 32), rat(243, 32768)]);
        let t = terms_prefix(&SequenceSpec::ZudilinDomb, 0).unwrap();
        assert_eq!(t.values(), &[rat(1, 1)]);
        let twice = SequenceSpec::BinomialTransformWrap(Box::new(
            SequenceSpec::BinomialTransformWrap(Box::new(SequenceSpec::half_fifth())),
        ));
        let a = terms_prefix(&SequenceSpec::half_fifth(), 10).unwrap();
        let b = terms_prefix(&twice, 10).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn identity8_by_direct_expansion() {
        // C(2n,n)² Σ_k C(2k,k)² C(2n−2k,n−k)², no symmetry shortcut
        let t = terms_prefix(&identity8(), 12).unwrap();
        for n in 0..=12i64 {
            let inner: BigInt = (0..=n)
                .map(|k| binomial(2 * k, k).pow(2) * binomial(2 * n - 2 * k, n - k).pow(2))
                .sum();
            let direct = binomial(2 * n, n).pow(2) * inner;
            assert_eq!(t.values()[n as usize], Rational::from_integer(direct));
        }
    }

    #[test]
    fn zudilin_domb_direct() {
        let t = terms_prefix(&SequenceSpec::ZudilinDomb, 8).unwrap();
        for n in 0..=8i64 {
            let s: BigInt = (0..=n)
                .map(|k| {
                    BigInt::from(16).pow((n - k) as u32)
                        * binomial(2 * k, k).pow(3)
                        * binomial(2 * n - 2 * k, n - k)
                })
                .sum();
            let direct = binomial(2 * n, n) * binomial(4 * n, 2 * n) * s;
            assert_eq!(t.values()[n as usize], Rational::from_integer(direct));
        }
    }

    #[test]
    fn quartic_product() {
        let t = terms_prefix(&SequenceSpec::half_weight_quartic(), 3).unwrap();
        // n = 1: C(2,1)² C(4,2)³ / (3/2) = 4·216·2/3
        assert_eq!(t.values()[1], rat(576, 1));
        assert_eq!(t.values()[0], rat(2, 1));
    }

    #[test]
    fn half_weight_divides() {
        let inner = SequenceSpec::pochhammer(vec![rat(1, 2)], 1, Rational::one());
        let t = terms_prefix(&SequenceSpec::half_weight(inner.clone()), 5).unwrap();
        let base = terms_prefix(&inner, 5).unwrap();
        for n in 0..=5 {
            assert_eq!(
                t.values()[n],
                &base.values()[n] / (rat(n as i64, 1) + rat(1, 2))
            );
        }
    }

    #[test]
    fn wrappers_match_slice_transforms() {
        let base = terms_prefix(&SequenceSpec::half_fifth(), 15).unwrap();
        let bt = terms_prefix(
            &SequenceSpec::BinomialTransformWrap(Box::new(SequenceSpec::half_fifth())),
            15,
        )
        .unwrap();
        assert_eq!(bt.values(), binomial_transform(base.values()).as_slice());
        let rt = terms_prefix(
            &SequenceSpec::riordan(SequenceSpec::half_fifth(), rat(3, 2)),
            15,
        )
        .unwrap();
        assert_eq!(
            rt.values(),
            riordan_transform(base.values(), &rat(3, 2)).as_slice()
        );
    }

    #[test]
    fn budget_enforced() {
        let mut t = TermTable::with_limit(SequenceSpec::half_fifth(), 10).unwrap();
        assert!(t.ensure(9).is_ok());
        assert!(matches!(t.ensure(10), Err(Error::Budget(_))));
        assert_eq!(t.len(), 10);
    }

    #[test]
    fn extension_preserves_entries() {
        let mut t = TermTable::new(SequenceSpec::ClosedFormSqrt).unwrap();
        t.ensure(5).unwrap();
        let before = t.values().to_vec();
        t.ensure(20).unwrap();
        assert_eq!(&t.values()[..6], before.as_slice());
    }
}
