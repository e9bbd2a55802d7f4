//! θ-operator calculus for moving an identity through a sequence transform.
//!
//! A transform relates generating functions by `Σ aₙxⁿ = μ(x)·Σ bₙ w(x)ⁿ`.
//! Applying `P(θ)` to both sides and evaluating at `x₀` gives
//! `Σ aₙP(n)x₀ⁿ = μ(x₀)·Σ bₙQ(n)w₀ⁿ`, where `Q` follows from the kernel values
//! `λ = θw/w` and `κ = θμ/μ` and their θ-derivatives at `x₀`. Those are read
//! off exact Taylor jets.

mod jet;
mod theta;

pub use jet::{Jet, MAX_JET_ORDER};
pub use theta::{binomial_theta_path, theta_numerator, BivariatePoly};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::catalog::{Formula, RhsConstant};
use crate::exactmath::{gcd_all, lcm_all, parse_rational, sqrt_rational};
use crate::sequences::SequenceSpec;
use crate::{Error, Polynomial, QuadExt, QuadJet, Rational, Result};

/// One of the four generating-function transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformMap {
    /// `μ = 1/(1−x)`, `w = −x/(1−x)`.
    Binomial,
    /// `μ = (1−x)^−(1+p)`, `w = −x/(1−x)`; `p` integer or half-integer.
    RiordanShift(Rational),
    /// `μ = √(1−4x)`, `w = x`.
    SqrtCentral,
    /// `μ = 1/(1+x²)`, `w = x/(1+x²)`.
    QuadraticBallot,
}

impl TransformMap {
    /// Accepts `binomial`, `riordan:P`, `sqrt-central` and `ballot`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = match text {
            "binomial" => TransformMap::Binomial,
            "sqrt-central" => TransformMap::SqrtCentral,
            "ballot" => TransformMap::QuadraticBallot,
            other => {
                let p = other
                    .strip_prefix("riordan:")
                    .and_then(|p| parse_rational(p).ok())
                    .ok_or_else(|| Error::UnknownTransform(text.to_string()))?;
                TransformMap::RiordanShift(p)
            }
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if let TransformMap::RiordanShift(p) = self {
            let den = p.denom();
            if !(den.is_one() || *den == BigInt::from(2)) {
                return Err(Error::UnknownTransform(format!(
                    "riordan:{p} (p must be an integer or half-integer)"
                )));
            }
        }
        Ok(())
    }

    /// Short tag used in derived formula names.
    pub fn slug(&self) -> String {
        match self {
            TransformMap::Binomial => "binomial".into(),
            TransformMap::SqrtCentral => "sqrt".into(),
            TransformMap::QuadraticBallot => "ballot".into(),
            TransformMap::RiordanShift(p) => {
                let half = Rational::new(1.into(), 2.into());
                let body = if *p == half {
                    "half".to_string()
                } else if *p == -half {
                    "neghalf".to_string()
                } else if p.is_integer() {
                    if p.is_negative() {
                        format!("neg{}", p.abs())
                    } else {
                        p.to_string()
                    }
                } else {
                    let twice = p.numer();
                    if p.is_negative() {
                        format!("neg{}halves", twice.abs())
                    } else {
                        format!("{twice}halves")
                    }
                };
                format!("riordan-{body}")
            }
        }
    }

    /// The sequence `b` with `Σ aₙxⁿ = μ(x)·Σ bₙ w(x)ⁿ` when `a` is `inner`.
    pub fn wrap(&self, inner: SequenceSpec) -> SequenceSpec {
        match self {
            TransformMap::Binomial => SequenceSpec::binomial_transform(inner),
            TransformMap::RiordanShift(p) => SequenceSpec::riordan(inner, p.clone()),
            TransformMap::SqrtCentral => SequenceSpec::central_binomial_conv(inner),
            TransformMap::QuadraticBallot => SequenceSpec::ballot(inner),
        }
    }
}

impl fmt::Display for TransformMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformMap::Binomial => write!(f, "binomial transform"),
            TransformMap::RiordanShift(p) => write!(f, "Riordan transform with p = {p}"),
            TransformMap::SqrtCentral => write!(f, "√(1−4x) transformation"),
            TransformMap::QuadraticBallot => write!(f, "quadratic substitution x/(1+x²)"),
        }
    }
}

/// Which of the two kernel functions to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelPart {
    Prefactor,
    Substitution,
}

/// Taylor jet of `μ` or `w` at `x₀`.
pub fn eval_jet(
    t: &TransformMap,
    which: KernelPart,
    x0: &Rational,
    order: usize,
) -> Result<QuadJet> {
    t.validate()?;
    if order > MAX_JET_ORDER {
        return Err(Error::UnsupportedOrder(format!(
            "jet order {order} exceeds {MAX_JET_ORDER}"
        )));
    }
    let x = Jet::<QuadExt>::variable(x0.clone(), order)?;
    let one = Jet::constant(x0.clone(), QuadExt::one(), order)?;
    let neg_one = QuadExt::rational(-Rational::one());
    match (t, which) {
        (TransformMap::Binomial, KernelPart::Prefactor) => one.sub(&x).recip(),
        (TransformMap::Binomial | TransformMap::RiordanShift(_), KernelPart::Substitution) => {
            x.scale(&neg_one).div(&one.sub(&x))
        }
        (TransformMap::RiordanShift(p), KernelPart::Prefactor) => {
            // (1−x)^e with 2e an integer
            let twice: BigInt =
                (-(Rational::one() + p) * Rational::from_integer(2.into())).to_integer();
            let twice: i64 = twice
                .try_into()
                .map_err(|_| Error::InvalidInput(format!("Riordan shift p = {p} is too large")))?;
            let base = one.sub(&x);
            if twice % 2 == 0 {
                base.powi(twice / 2)
            } else {
                base.powi(twice)?.sqrt()
            }
        }
        (TransformMap::SqrtCentral, KernelPart::Prefactor) => one
            .sub(&x.scale(&QuadExt::rational(Rational::from_integer(4.into()))))
            .sqrt(),
        (TransformMap::SqrtCentral, KernelPart::Substitution) => Ok(x),
        (TransformMap::QuadraticBallot, KernelPart::Prefactor) => one.add(&x.mul(&x)).recip(),
        (TransformMap::QuadraticBallot, KernelPart::Substitution) => x.div(&one.add(&x.mul(&x))),
    }
}

/// `μ(x₀)`, `w(x₀)` and the values of `λ, θλ, θ²λ` and `κ, θκ, θ²κ` at `x₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelValues {
    pub w0: Rational,
    pub mu0: QuadExt,
    pub lambda: [Rational; 3],
    pub kappa: [Rational; 3],
}

fn rational_part(v: &QuadExt, what: &str) -> Result<Rational> {
    if v.is_rational() {
        Ok(v.a().clone())
    } else {
        Err(Error::Consistency(format!("{what} = {v} is not rational")))
    }
}

/// `[f, θf, θ²f]` at the basepoint for `f = θg/g`, from an order-3 jet of `g`.
fn log_theta_values(g: &QuadJet, what: &str) -> Result<[Rational; 3]> {
    let f = g.theta()?.div(g)?;
    let f1 = f.theta()?;
    let f2 = f1.theta()?;
    Ok([
        rational_part(f.value(), what)?,
        rational_part(f1.value(), what)?,
        rational_part(f2.value(), what)?,
    ])
}

pub fn kernel_values(t: &TransformMap, x0: &Rational) -> Result<KernelValues> {
    let mu = eval_jet(t, KernelPart::Prefactor, x0, 3)?;
    let w = eval_jet(t, KernelPart::Substitution, x0, 3)?;
    let w0 = rational_part(w.value(), "w(x₀)")?;
    if w0.is_zero() {
        return Err(Error::DegenerateArgument(format!(
            "w({x0}) = 0 for the {t}"
        )));
    }
    Ok(KernelValues {
        lambda: log_theta_values(&w, "λ")?,
        kappa: log_theta_values(&mu, "κ")?,
        mu0: mu.value().clone(),
        w0,
    })
}

/// `Q(n)` with `P(θ)[μwⁿ](x₀) = μ(x₀)·Q(n)·w₀ⁿ`.
pub fn apply_operator(p: &Polynomial, kv: &KernelValues) -> Result<Polynomial> {
    if p.degree().is_some_and(|d| d > 3) {
        return Err(Error::UnsupportedOrder(format!(
            "θ-polynomial of degree {}",
            p.degree().unwrap()
        )));
    }
    let [k0, k1, k2] = kv.kappa.clone();
    let [l0, l1, l2] = kv.lambda.clone();
    // L = κ + nλ and its θ-derivatives, all linear in n
    let l = Polynomial::linear(k0, l0);
    let dl = Polynomial::linear(k1, l1);
    let ddl = Polynomial::linear(k2, l2);
    let e2 = l.mul(&l).add(&dl);
    let e3 = l
        .mul(&l)
        .mul(&l)
        .add(&l.mul(&dl).scale(&Rational::from_integer(3.into())))
        .add(&ddl);
    let basis = [Polynomial::constant(Rational::one()), l, e2, e3];
    Ok(p.coeffs()
        .iter()
        .zip(basis.iter())
        .fold(Polynomial::zero(), |acc, (c, e)| acc.add(&e.scale(c))))
}

/// A normalized polynomial, argument and right-hand side.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedIdentity {
    pub poly: Polynomial,
    pub argument: Rational,
    pub rhs: RhsConstant,
    /// The factor `ρ` applied to the raw polynomial and constant.
    pub scale: Rational,
}

/// Scales `q_raw` to coprime integers with a positive leading coefficient and
/// scales the raw constant by the same factor.
pub fn normalize_identity(
    q_raw: &Polynomial,
    w0: &Rational,
    rhs_raw: &QuadExt,
    pi_power: u32,
) -> Result<NormalizedIdentity> {
    let lead = q_raw
        .coeffs()
        .last()
        .ok_or_else(|| Error::DegenerateIdentity("transformed polynomial is zero".into()))?;
    let den = lcm_all(q_raw.coeffs().iter().map(|c| c.denom()));
    let num = gcd_all(q_raw.coeffs().iter().map(|c| c.numer()));
    let mut scale = Rational::new(den, num);
    if lead.is_negative() {
        scale = -scale;
    }
    let rhs = rhs_raw.clone() * QuadExt::rational(scale.clone());
    Ok(NormalizedIdentity {
        poly: q_raw.scale(&scale),
        argument: w0.clone(),
        rhs: RhsConstant::from_quad(&rhs, pi_power)?,
        scale,
    })
}

/// `q√s / μ₀` for a monomial `μ₀ = c√d`, folded into a single surd.
fn divide_by_prefactor(rhs: &RhsConstant, mu0: &QuadExt) -> Result<QuadExt> {
    let (c, d) = mu0.as_monomial().ok_or_else(|| {
        Error::Consistency(format!("prefactor value {mu0} is not a monomial surd"))
    })?;
    if c.is_zero() {
        return Err(Error::SingularBasepoint(
            "prefactor vanishes at the basepoint".into(),
        ));
    }
    let ratio = Rational::new(rhs.radicand().clone().into(), d.into());
    let surd = sqrt_rational(&ratio)?;
    Ok(surd * QuadExt::rational(rhs.q() / c))
}

/// Pushes `f` through `t`: the result sums `t(f.sequence)` at `w(x₀)`.
///
/// For the binomial kind the jet-based polynomial is checked against the
/// θ-numerator table before it is accepted.
pub fn derive_identity(f: &Formula, t: &TransformMap) -> Result<Formula> {
    match f.poly.degree() {
        None => {
            return Err(Error::DegenerateIdentity(format!(
                "{} has a zero polynomial",
                f.name
            )))
        }
        Some(d) if d > 3 => {
            return Err(Error::UnsupportedOrder(format!(
                "{} has degree {d}",
                f.name
            )))
        }
        _ => {}
    }
    let kv = kernel_values(t, &f.argument)?;
    let q = apply_operator(&f.poly, &kv)?;
    if *t == TransformMap::Binomial {
        let table = binomial_theta_path(&f.poly, &f.argument)?;
        if table != q {
            return Err(Error::Consistency(format!(
                "{}: kernel path gives {q}, θ-numerator path gives {table}",
                f.name
            )));
        }
    }
    let rhs_raw = divide_by_prefactor(&f.rhs, &kv.mu0)?;
    let norm = normalize_identity(&q, &kv.w0, &rhs_raw, f.rhs.pi_power())?;
    if norm.argument.abs() >= Rational::one() {
        return Err(Error::Domain(format!(
            "{} under the {t} lands at argument {}, outside |w| < 1",
            f.name, norm.argument
        )));
    }
    Ok(Formula {
        name: format!("{}-{}", f.name, t.slug()),
        sequence: t.wrap(f.sequence.clone()),
        poly: norm.poly,
        argument: norm.argument,
        rhs: norm.rhs,
        provenance: format!("{t} of {}", f.name),
        status: f.status,
    })
}

/// The positive integer `k` with `printed = k · derived` (polynomial and
/// constant scaled together, same sequence and argument), if any.
pub fn content_factor(derived: &Formula, printed: &Formula) -> Option<BigInt> {
    if derived.argument != printed.argument || derived.poly.degree() != printed.poly.degree() {
        return None;
    }
    let k = printed.poly.coeffs().last()? / derived.poly.coeffs().last()?;
    if !k.is_integer() || !k.is_positive() {
        return None;
    }
    (derived.poly.scale(&k) == printed.poly && derived.rhs.scaled(&k).same_value(&printed.rhs))
        .then(|| k.to_integer())
}
