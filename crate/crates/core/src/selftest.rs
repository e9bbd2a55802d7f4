//! Invariant checks runnable from the command line.
//!
//! Each check is exact except the numeric verification sample, which uses the
//! same pass rule as [`verify_identity`](crate::verify::verify_identity).

use num_bigint::BigInt;
use num_traits::One;

use crate::catalog::{builtin_catalog, parse_catalog, render_catalog, Catalog};
use crate::congruence::{congruence_suite, primes_between};
use crate::derive::{
    apply_operator, binomial_theta_path, content_factor, derive_identity, kernel_values,
    TransformMap,
};
use crate::exactmath::{binomial, dec_pi, int, rat};
use crate::sequences::{
    ballot_transform, binomial_transform, central_binomial_convolution, inverse_ballot,
    inverse_central_binomial, terms_prefix, SequenceSpec,
};
use crate::verify::verify_identity;
use crate::{Polynomial, Rational, Result};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl SelfCheck {
    fn from_result(name: &str, r: Result<String>) -> Self {
        match r {
            Ok(detail) => SelfCheck {
                name: name.into(),
                pass: true,
                detail,
            },
            Err(e) => SelfCheck {
                name: name.into(),
                pass: false,
                detail: e.to_string(),
            },
        }
    }
}

/// Catalog entries reproduced by a transform: `(source, transform, printed, s)`.
///
/// The printed sequence is `sⁿ` times the transformed one, so its argument is
/// the derived argument divided by `s`.
pub const PRINTED_DERIVATIONS: &[(&str, &str, &str, i64)] = &[
    ("id1", "binomial", "id1-binomial", 1),
    ("id2", "binomial", "id2-binomial", 1),
    ("id3-original", "binomial", "id3-binomial", 1),
    ("id4", "binomial", "id4-binomial", 1),
    ("id5", "binomial", "id5-binomial", 1),
    ("id6", "binomial", "id6-binomial", 1),
    ("id7", "binomial", "id7-binomial", 1),
    ("id8", "binomial", "id8-binomial", 1),
    ("id9", "binomial", "id9-monster", 1),
    ("gourevich", "binomial", "gourevich-binomial", 1),
    ("z1", "binomial", "z1-binomial", 1),
    ("z2", "binomial", "z2-binomial", 1),
    ("id1", "riordan:1/2", "id1-riordan-half", 1),
    ("id2", "riordan:1/2", "id2-riordan-half", 1),
    ("id1", "riordan:-1/2", "id1-riordan-neghalf", 4),
    ("id2", "riordan:-1/2", "id2-riordan-neghalf", 4),
    ("id1-central", "sqrt-central", "id1-sqrt", 1),
    ("id2-central", "sqrt-central", "id2-sqrt", 1),
    ("id1-central", "ballot", "id1-ballot", 1),
    ("id2-central", "ballot", "id2-ballot", 1),
];

/// Derives `source` under `transform` and returns the content factor `k`
/// with `printed = k · derived`.
pub fn printed_content(
    catalog: &Catalog,
    source: &str,
    transform: &str,
    printed: &str,
    seq_scale: i64,
) -> Result<BigInt> {
    let t = TransformMap::parse(transform)?;
    let mut derived = derive_identity(catalog.get(source)?, &t)?;
    derived.argument /= rat(seq_scale, 1);
    let target = catalog.get(printed)?;
    content_factor(&derived, target).ok_or_else(|| {
        crate::Error::Consistency(format!(
            "{source} under {t}: derived ({}; {}; {}) does not match {printed}",
            derived.poly,
            derived.argument,
            crate::catalog::render_rhs(&derived.rhs)
        ))
    })
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(crate::Error::Consistency(what()))
    }
}

fn values(spec: &SequenceSpec, max_n: usize) -> Result<Vec<Rational>> {
    Ok(terms_prefix(spec, max_n)?.values().to_vec())
}

fn check_derivations() -> Result<String> {
    let c = builtin_catalog();
    let mut scaled = Vec::new();
    for &(source, t, printed, s) in PRINTED_DERIVATIONS {
        let k = printed_content(&c, source, t, printed, s)?;
        if !k.is_one() {
            scaled.push(format!("{printed}×{k}"));
        }
    }
    let mut detail = format!("{} displays reproduced", PRINTED_DERIVATIONS.len());
    if !scaled.is_empty() {
        detail.push_str(&format!(" (printed with content: {})", scaled.join(", ")));
    }
    Ok(detail)
}

fn check_pochhammer_central() -> Result<String> {
    let a = values(
        &SequenceSpec::pochhammer(vec![rat(1, 2)], 1, rat(1, 1)),
        100,
    )?;
    for (n, v) in a.iter().enumerate() {
        let want = Rational::new(
            binomial(2 * n as i64, n as i64),
            BigInt::from(4).pow(n as u32),
        );
        ensure(*v == want, || {
            format!("(1/2)_n/n! differs from C(2n,n)/4ⁿ at n = {n}")
        })?;
    }
    Ok("n ≤ 100".into())
}

fn check_closed_forms() -> Result<String> {
    let s1 = SequenceSpec::half_fifth();
    let half = values(&SequenceSpec::riordan(s1.clone(), rat(1, 2)), 30)?;
    let neg = values(&SequenceSpec::riordan(s1, rat(-1, 2)), 30)?;
    let closed_half = values(&SequenceSpec::ClosedFormHalfShift, 30)?;
    let closed_neg = values(&SequenceSpec::ClosedFormNegHalfShift, 30)?;
    for n in 0..=30 {
        ensure(half[n] == closed_half[n], || {
            format!("p = 1/2 closed form differs at n = {n}")
        })?;
        let four_n = int(BigInt::from(4).pow(n as u32));
        ensure(&neg[n] * four_n == closed_neg[n], || {
            format!("p = −1/2 closed form differs at n = {n}")
        })?;
    }
    Ok("n ≤ 30".into())
}

fn check_inverse_pairs() -> Result<String> {
    let c = builtin_catalog();
    for name in ["id1", "id4", "id9", "z1"] {
        let a = values(&c.get(name)?.sequence, 40)?;
        ensure(binomial_transform(&binomial_transform(&a)) == a, || {
            format!("binomial transform is not an involution on {name}")
        })?;
        ensure(
            inverse_central_binomial(&central_binomial_convolution(&a)) == a,
            || format!("central-binomial pair fails on {name}"),
        )?;
        ensure(inverse_ballot(&ballot_transform(&a)) == a, || {
            format!("ballot pair fails on {name}")
        })?;
    }
    Ok("binomial, central-binomial and ballot pairs for n ≤ 40".into())
}

fn check_theta_table() -> Result<String> {
    let p = Polynomial::from_ints(&[3, -2, 5, 7]);
    let points = [rat(-1, 4), rat(-1, 3), rat(1, 7), rat(-5, 11), rat(2, 9)];
    for x in &points {
        let kernel = apply_operator(&p, &kernel_values(&TransformMap::Binomial, x)?)?;
        let table = binomial_theta_path(&p, x)?;
        ensure(kernel == table, || {
            format!("θ-numerator table disagrees with jets at x = {x}")
        })?;
    }
    Ok(format!("{} basepoints, degree 3", points.len()))
}

fn check_catalog_round_trip() -> Result<String> {
    let c = builtin_catalog();
    let text = render_catalog(&c);
    let back = parse_catalog(&text)?;
    ensure(back == c, || {
        "builtin catalog changes under render/parse".into()
    })?;
    ensure(render_catalog(&back) == text, || {
        "catalog rendering is not stable".into()
    })?;
    Ok(format!(
        "{} formulas, {} claims",
        c.formulas.len(),
        c.claims.len()
    ))
}

fn check_congruences() -> Result<String> {
    let c = builtin_catalog();
    let primes = primes_between(5, 47);
    let results = congruence_suite(&c.claims, &primes);
    for r in &results {
        let r = r.as_ref().map_err(Clone::clone)?;
        ensure(r.pass, || {
            format!(
                "{} fails at p = {} (valuation {})",
                r.claim, r.prime, r.valuation
            )
        })?;
    }
    Ok(format!("{} cells, primes 5..47", results.len()))
}

fn check_pi() -> Result<String> {
    const PI_60: &str = "3141592653589793238462643383279502884197169399375105820974944";
    let pi = dec_pi(60)?;
    ensure(pi.mantissa().to_string() == PI_60, || {
        "π digits differ from the reference".into()
    })?;
    Ok("60 digits".into())
}

fn check_verify_sample() -> Result<String> {
    let c = builtin_catalog();
    let names = [
        "id1",
        "id1-binomial",
        "id9-monster",
        "gourevich-binomial",
        "z2-binomial",
    ];
    for name in names {
        let r = verify_identity(c.get(name)?, 40)?;
        ensure(r.pass, || {
            format!("{name} residual {}", r.residual.to_scientific(3))
        })?;
    }
    let suspect = verify_identity(c.get("id3-suspect")?, 40)?;
    ensure(!suspect.pass, || "id3-suspect unexpectedly verifies".into())?;
    Ok(format!(
        "{} identities at 40 digits; id3-suspect fails",
        names.len()
    ))
}

type Check = fn() -> Result<String>;

/// Runs every check in a fixed order.
pub fn run_selftest() -> Vec<SelfCheck> {
    let checks: [(&str, Check); 9] = [
        ("pochhammer-central", check_pochhammer_central),
        ("closed-forms", check_closed_forms),
        ("inverse-pairs", check_inverse_pairs),
        ("theta-table", check_theta_table),
        ("derivations", check_derivations),
        ("catalog-round-trip", check_catalog_round_trip),
        ("pi", check_pi),
        ("congruences", check_congruences),
        ("verify-sample", check_verify_sample),
    ];
    checks
        .iter()
        .map(|(name, f)| SelfCheck::from_result(name, f()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        for c in run_selftest() {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let mut c = builtin_catalog();
        let idx = c
            .formulas
            .iter()
            .position(|f| f.name == "id1-binomial")
            .unwrap();
        c.formulas[idx].poly = Polynomial::from_ints(&[-15, -16, 65]);
        let err = printed_content(&c, "id1", "binomial", "id1-binomial", 1).unwrap_err();
        assert!(err.to_string().contains("does not match id1-binomial"));
    }
}
