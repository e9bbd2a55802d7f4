//! The four sequence transforms and the two printed inverses, on plain slices.
//!
//! Each `*_term` function computes entry `n` from the input prefix `0..=n`;
//! the slice versions map it over the whole prefix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactmath::{binomial, central_binomials};
use crate::Rational;

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Running sum `num/den` that reduces only once, at the end.
struct Accumulator {
    num: BigInt,
    den: BigInt,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    /// Adds `±c·r` for an integer `c`.
    fn add(&mut self, negate: bool, c: &BigInt, r: &Rational) {
        self.add_parts(negate, c * r.numer(), r.denom());
    }

    /// Adds `±c·r` for a rational `c`.
    fn add_scaled(&mut self, negate: bool, c: &Rational, r: &Rational) {
        self.add_parts(negate, c.numer() * r.numer(), &(c.denom() * r.denom()));
    }

    fn add_parts(&mut self, negate: bool, mut top: BigInt, e: &BigInt) {
        if negate {
            top = -top;
        }
        if e.is_one() {
            self.num += top * &self.den;
            return;
        }
        let (q, rem) = self.den.div_rem(e);
        if rem.is_zero() {
            self.num += top * q;
        } else {
            let g = self.den.gcd(e);
            let e_g = e / &g;
            self.num = &self.num * &e_g + top * (&self.den / &g);
            self.den *= e_g;
        }
    }

    fn finish(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

/// `b_n = Σ_j (−1)^j C(n,j) a_j`.
pub(crate) fn binomial_transform_term(a: &[Rational], n: usize) -> Rational {
    let mut c = BigInt::one();
    let mut acc = Accumulator::new();
    for (j, aj) in a.iter().enumerate().take(n + 1) {
        acc.add(j % 2 == 1, &c, aj);
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc.finish()
}

/// `b_n = Σ_{j=0}^{n} (−1)^j C(n+p, j+p) a_j`; terms with `j > n` vanish.
pub(crate) fn riordan_term(a: &[Rational], n: usize, p: &Rational) -> Rational {
    // walk j downward from n: G(n,n) = 1, G(n,j−1) = G(n,j)·(j+p)/(n−j+1)
    let mut g = Rational::one();
    let mut acc = Accumulator::new();
    for j in (0..=n).rev() {
        acc.add_scaled(j % 2 == 1, &g, &a[j]);
        if j > 0 {
            g = g * (Rational::from_integer(j.into()) + p)
                / Rational::from_integer((n - j + 1).into());
        }
    }
    acc.finish()
}

/// `b_n = Σ_k C(2k,k) a_(n−k)`.
pub(crate) fn central_binomial_term(a: &[Rational], n: usize, central: &[BigInt]) -> Rational {
    let mut acc = Accumulator::new();
    for k in 0..=n {
        acc.add(false, &central[k], &a[n - k]);
    }
    acc.finish()
}

/// `b_n = Σ_(k ≤ n/2) (C(n,k) − C(n,k−1)) a_(n−2k)`.
pub(crate) fn ballot_term(a: &[Rational], n: usize) -> Rational {
    let n = n as i64;
    let mut acc = Accumulator::new();
    for k in 0..=n / 2 {
        acc.add(
            false,
            &(binomial(n, k) - binomial(n, k - 1)),
            &a[(n - 2 * k) as usize],
        );
    }
    acc.finish()
}

pub fn binomial_transform(a: &[Rational]) -> Vec<Rational> {
    (0..a.len())
        .map(|n| binomial_transform_term(a, n))
        .collect()
}

pub fn riordan_transform(a: &[Rational], p: &Rational) -> Vec<Rational> {
    (0..a.len()).map(|n| riordan_term(a, n, p)).collect()
}

pub fn central_binomial_convolution(a: &[Rational]) -> Vec<Rational> {
    let central = central_binomials(a.len());
    (0..a.len())
        .map(|n| central_binomial_term(a, n, &central))
        .collect()
}

/// `a_n = Σ_k (C(2k,k) − 4·C(2k−2,k−1)) b_(n−k)`, inverting [`central_binomial_convolution`].
pub fn inverse_central_binomial(b: &[Rational]) -> Vec<Rational> {
    (0..b.len() as i64)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let coeff = binomial(2 * k, k) - BigInt::from(4) * binomial(2 * k - 2, k - 1);
                    &b[(n - k) as usize] * int(coeff)
                })
                .sum()
        })
        .collect()
}

pub fn ballot_transform(a: &[Rational]) -> Vec<Rational> {
    (0..a.len()).map(|n| ballot_term(a, n)).collect()
}

/// `a_n = Σ_k (−1)^k C(n−k,k) b_(n−2k)`, inverting [`ballot_transform`].
pub fn inverse_ballot(b: &[Rational]) -> Vec<Rational> {
    (0..b.len() as i64)
        .map(|n| {
            (0..=n / 2)
                .map(|k| {
                    let c = int(binomial(n - k, k));
                    let t = &b[(n - 2 * k) as usize] * c;
                    if k % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::sequences::gen_binomial;
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn binomial_transform_small() {
        // Σ(−1)^j C(n,j)·1 = [n = 0]
        assert_eq!(binomial_transform(&seq(&[1, 1, 1, 1])), seq(&[1, 0, 0, 0]));
    }

    #[test]
    fn riordan_at_zero_is_binomial() {
        let a: Vec<Rational> = (1..12).map(|k| rat(1, k * k)).collect();
        assert_eq!(
            riordan_transform(&a, &Rational::zero()),
            binomial_transform(&a)
        );
    }

    #[test]
    fn riordan_matches_gen_binomial_definition() {
        let a: Vec<Rational> = (1..10).map(|k| rat(k, k + 3)).collect();
        let p = rat(1, 2);
        let fast = riordan_transform(&a, &p);
        for n in 0..a.len() {
            let direct: Rational = (0..=n)
                .map(|j| {
                    let t = gen_binomial(n as u64, j as u64, &p) * &a[j];
                    if j % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum();
            assert_eq!(fast[n], direct);
        }
    }

    proptest! {
        #[test]
        fn printed_inverses_round_trip(v in proptest::collection::vec(-50i64..50, 1..25)) {
            let a = seq(&v);
            prop_assert_eq!(inverse_central_binomial(&central_binomial_convolution(&a)), a.clone());
            prop_assert_eq!(inverse_ballot(&ballot_transform(&a)), a.clone());
            prop_assert_eq!(binomial_transform(&binomial_transform(&a)), a);
        }
    }
}
