//! Structured store of the series identities and congruence claims, with a
//! JSON file format and plain-text rendering.

mod builtin;
mod format;
mod render;

pub use builtin::builtin_catalog;
pub use format::{formula_json, parse_catalog, render_catalog};
pub use render::{render_argument, render_formula, render_rhs};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::exactmath::{is_perfect_square, Quad};
use crate::sequences::SequenceSpec;
use crate::{Error, Polynomial, QuadExt, Rational, Result};

/// Right-hand side `q·√s / π^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhsConstant {
    q: Rational,
    radicand: BigUint,
    pi_power: u32,
}

impl RhsConstant {
    pub fn new(q: Rational, radicand: impl Into<BigUint>, pi_power: u32) -> Result<Self> {
        let radicand = radicand.into();
        if q.is_zero() {
            return Err(Error::InvalidInput(
                "right-hand side coefficient q must be nonzero".into(),
            ));
        }
        if radicand.is_zero() {
            return Err(Error::InvalidInput("radicand must be at least 1".into()));
        }
        if !(2..=3).contains(&pi_power) {
            return Err(Error::InvalidInput(format!(
                "pi_power must be 2 or 3, got {pi_power}"
            )));
        }
        Ok(RhsConstant {
            q,
            radicand,
            pi_power,
        })
    }

    /// Reads `q·√s` off a monomial quadratic-field element.
    pub fn from_quad(value: &QuadExt, pi_power: u32) -> Result<Self> {
        let (q, s) = value.as_monomial().ok_or_else(|| {
            Error::InvalidInput(format!("right-hand side {value} is not of the form q·√s"))
        })?;
        RhsConstant::new(q, s, pi_power)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    /// `q·√s` as a field element.
    pub fn as_quad(&self) -> QuadExt {
        Quad::new(self.radicand.clone(), Rational::zero(), self.q.clone())
    }

    pub fn scaled(&self, k: &Rational) -> RhsConstant {
        RhsConstant {
            q: &self.q * k,
            ..self.clone()
        }
    }

    /// Exact equality of values, without factoring the radicands.
    pub fn same_value(&self, other: &RhsConstant) -> bool {
        self.pi_power == other.pi_power
            && self.q.is_negative() == other.q.is_negative()
            && &self.q * &self.q * Rational::from_integer(self.radicand.clone().into())
                == &other.q * &other.q * Rational::from_integer(other.radicand.clone().into())
    }

    /// `self / other` when it is rational.
    pub fn ratio_to(&self, other: &RhsConstant) -> Option<Rational> {
        if self.pi_power != other.pi_power {
            return None;
        }
        let sq = (&self.q * &self.q) / (&other.q * &other.q)
            * Rational::new(self.radicand.clone().into(), other.radicand.clone().into());
        let num = is_perfect_square(sq.numer().magnitude())?;
        let den = is_perfect_square(sq.denom().magnitude())?;
        let r = Rational::new(BigInt::from(num), BigInt::from(den));
        Some(if self.q.is_negative() != other.q.is_negative() {
            -r
        } else {
            r
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    VerifiedExpected,
    Suspect,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::VerifiedExpected => "verified-expected",
            Status::Suspect => "suspect",
        }
    }

    pub fn parse(text: &str) -> Option<Status> {
        match text {
            "verified-expected" => Some(Status::VerifiedExpected),
            "suspect" => Some(Status::Suspect),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A series identity `Σ a_n P(n) x₀ⁿ = q√s/π^k`, with any `(−1)ⁿ` folded into `x₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct Formula {
    pub name: String,
    pub sequence: SequenceSpec,
    pub poly: Polynomial,
    pub argument: Rational,
    pub rhs: RhsConstant,
    pub provenance: String,
    pub status: Status,
}

impl Formula {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::InvalidInput("formula name is empty".into()));
        }
        if self.argument.abs() >= Rational::one() {
            return Err(Error::InvalidInput(format!(
                "{}: argument {} is outside |x| < 1",
                self.name, self.argument
            )));
        }
        match self.poly.degree() {
            None => Err(Error::InvalidInput(format!(
                "{}: zero polynomial",
                self.name
            ))),
            Some(d) if d > 3 => Err(Error::InvalidInput(format!(
                "{}: polynomial degree {d} exceeds 3",
                self.name
            ))),
            _ => self.sequence.validate(),
        }
    }

    /// Same identity up to names and provenance.
    pub fn same_identity(&self, other: &Formula) -> bool {
        self.sequence == other.sequence
            && self.poly == other.poly
            && self.argument == other.argument
            && self.rhs.same_value(&other.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Character {
    None,
    /// `(2/p)`.
    Kronecker2,
}

impl Character {
    pub fn as_str(self) -> &'static str {
        match self {
            Character::None => "none",
            Character::Kronecker2 => "kronecker-2",
        }
    }

    pub fn parse(text: &str) -> Option<Character> {
        match text {
            "none" => Some(Character::None),
            "kronecker-2" => Some(Character::Kronecker2),
            _ => None,
        }
    }
}

/// `Σ_{n<p} a_n P(n) x₀ⁿ ≡ c·χ(p)·p² (mod p^m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceClaim {
    pub name: String,
    pub sequence: SequenceSpec,
    pub poly: Polynomial,
    pub argument: Rational,
    pub modulus_power: u32,
    pub residue_coefficient: Rational,
    pub character: Character,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Catalog {
    pub formulas: Vec<Formula>,
    pub claims: Vec<CongruenceClaim>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Result<&Formula> {
        self.formulas
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFormula(name.to_string()))
    }

    pub fn claim(&self, name: &str) -> Result<&CongruenceClaim> {
        self.claims
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownFormula(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.formulas.iter().map(|f| f.name.as_str())
    }

    /// Appends a formula, rejecting a name already present.
    pub fn push(&mut self, formula: Formula) -> Result<()> {
        if self.formulas.iter().any(|f| f.name == formula.name) {
            return Err(Error::InvalidInput(format!(
                "duplicate formula name `{}`",
                formula.name
            )));
        }
        formula.validate()?;
        self.formulas.push(formula);
        Ok(())
    }
}
