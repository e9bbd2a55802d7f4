//! Exact derivation and high-precision verification of Ramanujan-type series
//! for 1/π² and 1/π³.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactmath`]: rationals, quadratic-field elements `a + b√d`, fixed-point
//!   decimals with π and square roots.
//! - [`sequences`]: exact term generators for every sequence family, including
//!   the binomial, Riordan, central-binomial and ballot transforms.
//! - [`catalog`]: the built-in identities and the JSON catalog format.
//! - [`derive`]: θ-operator calculus turning an identity and a sequence
//!   transform into the transformed identity.
//! - [`verify`]: numeric verification with explicit error budgets.
//! - [`congruence`]: truncated-sum supercongruence checks via p-adic valuation.
//!
//! The algebraic layers ([`Poly`](poly::Poly), [`Quad`](exactmath::Quad),
//! [`Jet`](derive::Jet)) are generic over any [`Field`](scalar::Field);
//! the aliases below fix them to exact rationals.

pub mod catalog;
pub mod congruence;
pub mod derive;
pub mod error;
pub mod exactmath;
pub mod poly;
pub mod scalar;
pub mod selftest;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Element `a + b√d` with rational `a`, `b`.
pub type QuadExt = exactmath::Quad<Rational>;

/// Polynomial in `n` with rational coefficients, constant term first.
pub type Polynomial = poly::Poly<Rational>;

/// Truncated Taylor expansion over the quadratic extension.
pub type QuadJet = derive::Jet<QuadExt>;
