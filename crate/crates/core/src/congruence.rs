//! Supercongruence checks on exact truncated sums.
//!
//! `Σ_{n<p} a_n·P(n)·x₀ⁿ ≡ c·χ(p)·p² (mod p^m)` is read as
//! `v_p(sum − c·χ(p)·p²) ≥ m`, with the sum computed as an exact rational.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::catalog::{Character, CongruenceClaim};
use crate::sequences::TermTable;
use crate::{Error, Rational, Result};

/// p-adic valuation; zero has valuation `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn at_least(self, m: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= m,
            Valuation::Infinity => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueResult {
    pub prime: u64,
    pub claim: String,
    pub lhs_sum: Rational,
    pub target: Rational,
    pub valuation: Valuation,
    pub pass: bool,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(2/p) = (−1)^((p²−1)/8)` for an odd prime `p`.
pub fn legendre2(p: u64) -> Result<i8> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidPrime(p, "expected an odd prime".into()));
    }
    Ok(if matches!(p % 8, 1 | 7) { 1 } else { -1 })
}

fn v_int(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn p_adic_valuation(r: &Rational, p: u64) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinity;
    }
    let p = BigInt::from(p);
    Valuation::Finite(v_int(r.numer(), &p) - v_int(r.denom(), &p))
}

fn check_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidPrime(
            p,
            "congruence primes must be prime and at least 5".into(),
        ));
    }
    Ok(())
}

/// `c·χ(p)·p²`.
pub fn target(claim: &CongruenceClaim, p: u64) -> Result<Rational> {
    let chi = match claim.character {
        Character::None => 1,
        Character::Kronecker2 => legendre2(p)?,
    };
    let p2 = Rational::from_integer(BigInt::from(p) * BigInt::from(p));
    Ok(&claim.residue_coefficient * Rational::from_integer(chi.into()) * p2)
}

/// Exact `Σ_{n=0}^{p−1} a_n·P(n)·x₀ⁿ`.
pub fn truncated_sum(claim: &CongruenceClaim, p: u64) -> Result<Rational> {
    check_prime(p)?;
    let mut table = TermTable::new(claim.sequence.clone())?;
    prefix_sums(claim, &mut table, &[p]).map(|mut v| v.remove(0))
}

/// Sums up to each of the ascending cut-offs `ps`, in one pass.
fn prefix_sums(
    claim: &CongruenceClaim,
    table: &mut TermTable,
    ps: &[u64],
) -> Result<Vec<Rational>> {
    let Some(&top) = ps.last() else {
        return Ok(Vec::new());
    };
    table.ensure(top as usize - 1)?;
    let mut out = Vec::with_capacity(ps.len());
    let mut sum = Rational::zero();
    let mut power = Rational::one();
    let mut next = ps.iter().peekable();
    for n in 0..top {
        while next.peek().is_some_and(|&&p| p == n) {
            out.push(sum.clone());
            next.next();
        }
        sum += &table.values()[n as usize] * claim.poly.eval_at(n) * &power;
        power *= &claim.argument;
    }
    out.extend(next.map(|_| sum.clone()));
    Ok(out)
}

fn result_for(claim: &CongruenceClaim, p: u64, lhs_sum: Rational) -> Result<ResidueResult> {
    let target = target(claim, p)?;
    let valuation = p_adic_valuation(&(&lhs_sum - &target), p);
    Ok(ResidueResult {
        prime: p,
        claim: claim.name.clone(),
        pass: valuation.at_least(claim.modulus_power as i64),
        lhs_sum,
        target,
        valuation,
    })
}

pub fn check_claim(claim: &CongruenceClaim, p: u64) -> Result<ResidueResult> {
    let sum = truncated_sum(claim, p)?;
    result_for(claim, p, sum)
}

/// Every claim against every prime, ordered by claim then by the order of `primes`.
pub fn congruence_suite(claims: &[CongruenceClaim], primes: &[u64]) -> Vec<Result<ResidueResult>> {
    let mut valid: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| check_prime(p).is_ok())
        .collect();
    valid.sort_unstable();
    valid.dedup();
    claims
        .par_iter()
        .map(|claim| {
            let sums = TermTable::new(claim.sequence.clone())
                .and_then(|mut table| prefix_sums(claim, &mut table, &valid));
            primes
                .iter()
                .map(|&p| {
                    check_prime(p)?;
                    let sums = sums.as_ref().map_err(Clone::clone)?;
                    let at = valid.binary_search(&p).expect("valid prime");
                    result_for(claim, p, sums[at].clone())
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Reports `v_p(sum − c·χ(p)·p²)` for a candidate `c` without judging it.
pub fn candidate_sweep(
    claim: &CongruenceClaim,
    candidate: &Rational,
    primes: &[u64],
) -> Vec<Result<(u64, Valuation)>> {
    let probe = CongruenceClaim {
        residue_coefficient: candidate.clone(),
        ..claim.clone()
    };
    congruence_suite(std::slice::from_ref(&probe), primes)
        .into_iter()
        .map(|r| r.map(|r| (r.prime, r.valuation)))
        .collect()
}

/// Primes in `lo..=hi`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}
