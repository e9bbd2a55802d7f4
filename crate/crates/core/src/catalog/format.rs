use std::collections::HashSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{Catalog, Character, CongruenceClaim, Formula, RhsConstant, Status};
use crate::exactmath::{format_rational, parse_rational};
use crate::sequences::SequenceSpec;
use crate::{Error, Polynomial, Rational, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDoc {
    formulas: Vec<FormulaDoc>,
    #[serde(default)]
    congruence_claims: Vec<ClaimDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaDoc {
    name: String,
    sequence: SequenceDoc,
    poly: Vec<String>,
    argument: String,
    rhs: RhsDoc,
    provenance: String,
    status: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RhsDoc {
    q: String,
    radicand: String,
    pi_power: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClaimDoc {
    name: String,
    sequence: SequenceDoc,
    poly: Vec<String>,
    argument: String,
    modulus_power: u32,
    residue_coefficient: String,
    character: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum SequenceDoc {
    PochhammerQuotient {
        params: Vec<String>,
        factorial_power: u32,
        scale: String,
    },
    BinomialSelfConvolution {
        outer_power: u32,
        inner_power: u32,
        scale: String,
    },
    CentralBinomialProduct {
        power_2n: u32,
        power_4n: u32,
    },
    ZudilinDomb,
    HalfWeightWrap {
        inner: Box<SequenceDoc>,
    },
    BinomialTransformWrap {
        inner: Box<SequenceDoc>,
    },
    RiordanTransformWrap {
        p: String,
        inner: Box<SequenceDoc>,
    },
    CentralBinomialConvWrap {
        inner: Box<SequenceDoc>,
    },
    BallotQuadraticWrap {
        inner: Box<SequenceDoc>,
    },
    ClosedFormHalfShift,
    ClosedFormNegHalfShift,
    ClosedFormSqrt,
}

fn rs(r: &Rational) -> String {
    format_rational(r)
}

fn seq_doc(s: &SequenceSpec) -> SequenceDoc {
    let boxed = |inner: &SequenceSpec| Box::new(seq_doc(inner));
    match s {
        SequenceSpec::PochhammerQuotient {
            params,
            factorial_power,
            scale,
        } => SequenceDoc::PochhammerQuotient {
            params: params.iter().map(rs).collect(),
            factorial_power: *factorial_power,
            scale: rs(scale),
        },
        SequenceSpec::BinomialSelfConvolution {
            outer_power,
            inner_power,
            scale,
        } => SequenceDoc::BinomialSelfConvolution {
            outer_power: *outer_power,
            inner_power: *inner_power,
            scale: rs(scale),
        },
        SequenceSpec::CentralBinomialProduct { power_2n, power_4n } => {
            SequenceDoc::CentralBinomialProduct {
                power_2n: *power_2n,
                power_4n: *power_4n,
            }
        }
        SequenceSpec::ZudilinDomb => SequenceDoc::ZudilinDomb,
        SequenceSpec::HalfWeightWrap(i) => SequenceDoc::HalfWeightWrap { inner: boxed(i) },
        SequenceSpec::BinomialTransformWrap(i) => {
            SequenceDoc::BinomialTransformWrap { inner: boxed(i) }
        }
        SequenceSpec::RiordanTransformWrap { p, inner } => SequenceDoc::RiordanTransformWrap {
            p: rs(p),
            inner: boxed(inner),
        },
        SequenceSpec::CentralBinomialConvWrap(i) => {
            SequenceDoc::CentralBinomialConvWrap { inner: boxed(i) }
        }
        SequenceSpec::BallotQuadraticWrap(i) => {
            SequenceDoc::BallotQuadraticWrap { inner: boxed(i) }
        }
        SequenceSpec::ClosedFormHalfShift => SequenceDoc::ClosedFormHalfShift,
        SequenceSpec::ClosedFormNegHalfShift => SequenceDoc::ClosedFormNegHalfShift,
        SequenceSpec::ClosedFormSqrt => SequenceDoc::ClosedFormSqrt,
    }
}

fn formula_doc(f: &Formula) -> FormulaDoc {
    FormulaDoc {
        name: f.name.clone(),
        sequence: seq_doc(&f.sequence),
        poly: f.poly.coeffs().iter().map(rs).collect(),
        argument: rs(&f.argument),
        rhs: RhsDoc {
            q: rs(f.rhs.q()),
            radicand: f.rhs.radicand().to_string(),
            pi_power: f.rhs.pi_power(),
        },
        provenance: f.provenance.clone(),
        status: f.status.as_str().to_string(),
    }
}

fn claim_doc(c: &CongruenceClaim) -> ClaimDoc {
    ClaimDoc {
        name: c.name.clone(),
        sequence: seq_doc(&c.sequence),
        poly: c.poly.coeffs().iter().map(rs).collect(),
        argument: rs(&c.argument),
        modulus_power: c.modulus_power,
        residue_coefficient: rs(&c.residue_coefficient),
        character: c.character.as_str().to_string(),
    }
}

/// One formula in the catalog file representation.
pub fn formula_json(f: &Formula) -> serde_json::Value {
    serde_json::to_value(formula_doc(f)).expect("formula serializes")
}

/// Pretty-printed JSON document; output is deterministic.
pub fn render_catalog(catalog: &Catalog) -> String {
    let doc = CatalogDoc {
        formulas: catalog.formulas.iter().map(formula_doc).collect(),
        congruence_claims: catalog.claims.iter().map(claim_doc).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("catalog serializes");
    text.push('\n');
    text
}

fn rational_at(text: &str, at: &str) -> Result<Rational> {
    parse_rational(text).map_err(|m| Error::parse(at, m))
}

fn poly_at(coeffs: &[String], at: &str) -> Result<Polynomial> {
    let cs = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| rational_at(c, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let poly = Polynomial::new(cs);
    if poly.degree().is_some_and(|d| d > 3) {
        return Err(Error::parse(at, "polynomial degree exceeds 3"));
    }
    Ok(poly)
}

fn seq_from(doc: SequenceDoc, at: &str) -> Result<SequenceSpec> {
    let inner_at = format!("{at}.inner");
    let spec = match doc {
        SequenceDoc::PochhammerQuotient {
            params,
            factorial_power,
            scale,
        } => {
            let params = params
                .iter()
                .enumerate()
                .map(|(i, p)| rational_at(p, &format!("{at}.params[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            SequenceSpec::PochhammerQuotient {
                params,
                factorial_power,
                scale: rational_at(&scale, &format!("{at}.scale"))?,
            }
        }
        SequenceDoc::BinomialSelfConvolution {
            outer_power,
            inner_power,
            scale,
        } => SequenceSpec::BinomialSelfConvolution {
            outer_power,
            inner_power,
            scale: rational_at(&scale, &format!("{at}.scale"))?,
        },
        SequenceDoc::CentralBinomialProduct { power_2n, power_4n } => {
            SequenceSpec::CentralBinomialProduct { power_2n, power_4n }
        }
        SequenceDoc::ZudilinDomb => SequenceSpec::ZudilinDomb,
        SequenceDoc::HalfWeightWrap { inner } => {
            SequenceSpec::HalfWeightWrap(Box::new(seq_from(*inner, &inner_at)?))
        }
        SequenceDoc::BinomialTransformWrap { inner } => {
            SequenceSpec::BinomialTransformWrap(Box::new(seq_from(*inner, &inner_at)?))
        }
        SequenceDoc::RiordanTransformWrap { p, inner } => SequenceSpec::RiordanTransformWrap {
            p: rational_at(&p, &format!("{at}.p"))?,
            inner: Box::new(seq_from(*inner, &inner_at)?),
        },
        SequenceDoc::CentralBinomialConvWrap { inner } => {
            SequenceSpec::CentralBinomialConvWrap(Box::new(seq_from(*inner, &inner_at)?))
        }
        SequenceDoc::BallotQuadraticWrap { inner } => {
            SequenceSpec::BallotQuadraticWrap(Box::new(seq_from(*inner, &inner_at)?))
        }
        SequenceDoc::ClosedFormHalfShift => SequenceSpec::ClosedFormHalfShift,
        SequenceDoc::ClosedFormNegHalfShift => SequenceSpec::ClosedFormNegHalfShift,
        SequenceDoc::ClosedFormSqrt => SequenceSpec::ClosedFormSqrt,
    };
    spec.validate()
        .map_err(|e| Error::parse(at, e.to_string()))?;
    Ok(spec)
}

fn formula_from(doc: FormulaDoc, at: &str) -> Result<Formula> {
    let radicand: BigUint =
        doc.rhs.radicand.parse().map_err(|_| {
            Error::parse(format!("{at}.rhs.radicand"), "not a non-negative integer")
        })?;
    let q = rational_at(&doc.rhs.q, &format!("{at}.rhs.q"))?;
    let rhs = RhsConstant::new(q, radicand, doc.rhs.pi_power)
        .map_err(|e| Error::parse(format!("{at}.rhs"), e.to_string()))?;
    let status = Status::parse(&doc.status).ok_or_else(|| {
        Error::parse(
            format!("{at}.status"),
            format!("unknown status `{}`", doc.status),
        )
    })?;
    let formula = Formula {
        sequence: seq_from(doc.sequence, &format!("{at}.sequence"))?,
        poly: poly_at(&doc.poly, &format!("{at}.poly"))?,
        argument: rational_at(&doc.argument, &format!("{at}.argument"))?,
        name: doc.name,
        rhs,
        provenance: doc.provenance,
        status,
    };
    formula
        .validate()
        .map_err(|e| Error::parse(at, e.to_string()))?;
    Ok(formula)
}

fn claim_from(doc: ClaimDoc, at: &str) -> Result<CongruenceClaim> {
    if !(5..=6).contains(&doc.modulus_power) {
        return Err(Error::parse(
            format!("{at}.modulus_power"),
            "must be 5 or 6",
        ));
    }
    let character = Character::parse(&doc.character).ok_or_else(|| {
        Error::parse(
            format!("{at}.character"),
            format!("unknown character `{}`", doc.character),
        )
    })?;
    Ok(CongruenceClaim {
        sequence: seq_from(doc.sequence, &format!("{at}.sequence"))?,
        poly: poly_at(&doc.poly, &format!("{at}.poly"))?,
        argument: rational_at(&doc.argument, &format!("{at}.argument"))?,
        residue_coefficient: rational_at(
            &doc.residue_coefficient,
            &format!("{at}.residue_coefficient"),
        )?,
        modulus_power: doc.modulus_power,
        character,
        name: doc.name,
    })
}

/// Parses a catalog document. Errors name the offending line and column for
/// malformed JSON, or the field path for invalid values.
pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let doc: CatalogDoc = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let mut catalog = Catalog::default();
    let mut seen = HashSet::new();
    for (i, f) in doc.formulas.into_iter().enumerate() {
        let at = format!("formulas[{i}]");
        if !seen.insert(f.name.clone()) {
            return Err(Error::parse(
                format!("{at}.name"),
                format!("duplicate name `{}`", f.name),
            ));
        }
        catalog.formulas.push(formula_from(f, &at)?);
    }
    let mut seen = HashSet::new();
    for (i, c) in doc.congruence_claims.into_iter().enumerate() {
        let at = format!("congruence_claims[{i}]");
        if !seen.insert(c.name.clone()) {
            return Err(Error::parse(
                format!("{at}.name"),
                format!("duplicate name `{}`", c.name),
            ));
        }
        catalog.claims.push(claim_from(c, &at)?);
    }
    Ok(catalog)
}
