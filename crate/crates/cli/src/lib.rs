//! Command-line front end: catalog listing, derivation, numeric verification,
//! congruence sweeps and the self-test suite.
//!
//! Exit status is 0 when every requested check passes, 1 when a check fails
//! and 2 for usage, parse or catalog errors. The `json` and `tsv` formats are
//! deterministic and carry no timings.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramseries::catalog::{
    builtin_catalog, formula_json, parse_catalog, render_catalog, render_formula, Catalog,
    CongruenceClaim, Formula, Status,
};
use ramseries::congruence::{candidate_sweep, congruence_suite, is_prime, primes_between};
use ramseries::derive::{derive_identity, TransformMap};
use ramseries::exactmath::{format_rational, parse_rational};
use ramseries::selftest::run_selftest;
use ramseries::verify::{verify_all, MIN_VERIFY_DIGITS};
use ramseries::{Error, Rational};
use serde::Serialize;

pub const MAX_PRIME: u64 = 10_000;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ramseries",
    version,
    about = "Derive and verify Ramanujan-type series for 1/π² and 1/π³"
)]
struct Cli {
    /// Catalog file to use instead of the built-in catalog.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog formulas with their status.
    List,
    /// Show one formula with its provenance.
    Show { name: String },
    /// Verify formulas numerically.
    Verify(VerifyArgs),
    /// Derive a transformed identity.
    Derive(DeriveArgs),
    /// Check congruence claims over a range of primes.
    Congruence(CongruenceArgs),
    /// Run the invariant suites.
    Selftest,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Formula name, comma-separated names, or `all`.
    #[arg(long, default_value = "all")]
    formula: String,
    /// Decimal digits of precision (at least 20).
    #[arg(long, env = "RAMSERIES_DIGITS", default_value_t = 60)]
    digits: u32,
    /// Exit 0 even when suspect formulas fail.
    #[arg(long)]
    allow_suspect: bool,
}

#[derive(Args, Debug)]
struct DeriveArgs {
    #[arg(long)]
    formula: String,
    /// `binomial`, `riordan:P`, `sqrt-central` or `ballot`.
    #[arg(long)]
    transform: String,
    /// Append the derived formula to this catalog file (created if missing).
    #[arg(long, value_name = "PATH")]
    save: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CongruenceArgs {
    /// Claim name, comma-separated names, or `all`.
    #[arg(long, default_value = "all")]
    claims: String,
    /// Inclusive range `LO..HI` or a comma-separated list of primes.
    #[arg(long, default_value = "5..97")]
    primes: String,
    /// Report valuations for this residue coefficient instead of the claimed one.
    #[arg(long)]
    candidate: Option<String>,
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub catalog: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommandKind {
    List,
    Show {
        name: String,
    },
    Verify {
        formulas: Selection,
        digits: u32,
        allow_suspect: bool,
    },
    Derive {
        formula: String,
        transform: TransformMap,
        save: Option<PathBuf>,
    },
    Congruence {
        claims: Selection,
        primes: Vec<u64>,
        candidate: Option<Rational>,
    },
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    Names(Vec<String>),
}

impl Selection {
    fn parse(text: &str) -> Selection {
        if text == "all" {
            Selection::All
        } else {
            Selection::Names(text.split(',').map(|s| s.trim().to_string()).collect())
        }
    }
}

/// A run that could not complete, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_)
            | Error::Config(_)
            | Error::Parse { .. }
            | Error::UnknownFormula(_)
            | Error::UnknownTransform(_)
            | Error::InvalidPrime(..) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

/// Parses `LO..HI` (inclusive, primes only) or `p1,p2,…`.
pub fn parse_primes(text: &str) -> Result<Vec<u64>, Failure> {
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| Failure::usage(format!("`{s}` is not a prime bound")))
    };
    let primes = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(Failure::usage(format!("empty prime range {text}")));
        }
        check_bounds(lo)?;
        check_bounds(hi)?;
        primes_between(lo, hi)
    } else {
        let list = text.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        for &p in &list {
            check_bounds(p)?;
            if !is_prime(p) {
                return Err(Failure::usage(format!("{p} is not prime")));
            }
        }
        list
    };
    Ok(primes)
}

fn check_bounds(p: u64) -> Result<(), Failure> {
    if !(5..=MAX_PRIME).contains(&p) {
        return Err(Failure::usage(format!(
            "prime bound {p} outside [5, {MAX_PRIME}]"
        )));
    }
    Ok(())
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, Failure> {
        let command = match cli.command {
            Command::List => CommandKind::List,
            Command::Show { name } => CommandKind::Show { name },
            Command::Verify(a) => {
                if a.digits < MIN_VERIFY_DIGITS {
                    return Err(Failure::usage(format!(
                        "--digits must be at least {MIN_VERIFY_DIGITS}, got {}",
                        a.digits
                    )));
                }
                CommandKind::Verify {
                    formulas: Selection::parse(&a.formula),
                    digits: a.digits,
                    allow_suspect: a.allow_suspect,
                }
            }
            Command::Derive(a) => CommandKind::Derive {
                formula: a.formula,
                transform: TransformMap::parse(&a.transform)?,
                save: a.save,
            },
            Command::Congruence(a) => CommandKind::Congruence {
                claims: Selection::parse(&a.claims),
                primes: parse_primes(&a.primes)?,
                candidate: a
                    .candidate
                    .map(|c| {
                        parse_rational(&c).map_err(|m| Failure::usage(format!("--candidate: {m}")))
                    })
                    .transpose()?,
            },
            Command::Selftest => CommandKind::Selftest,
        };
        Ok(RunConfig {
            command,
            catalog: cli.catalog,
            format: cli.format,
        })
    }
}

/// Parses arguments, runs, writes the report to `out` and diagnostics to
/// `err`, and returns the exit status.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_PASS
            };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| run(&config, out, err));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs a validated configuration and returns the exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let catalog = load_catalog(config.catalog.as_deref())?;
    let report = match &config.command {
        CommandKind::List => list(&catalog, config.format),
        CommandKind::Show { name } => show(catalog.get(name)?, config.format),
        CommandKind::Verify {
            formulas,
            digits,
            allow_suspect,
        } => verify(
            &catalog,
            formulas,
            *digits,
            *allow_suspect,
            config.format,
            err,
        )?,
        CommandKind::Derive {
            formula,
            transform,
            save,
        } => derive(&catalog, formula, transform, save.as_deref(), config.format)?,
        CommandKind::Congruence {
            claims,
            primes,
            candidate,
        } => congruence(
            &catalog,
            claims,
            primes,
            candidate.as_ref(),
            config.format,
            err,
        )?,
        CommandKind::Selftest => selftest(config.format),
    };
    out.write_all(report.text.as_bytes())?;
    Ok(report.code)
}

struct Report {
    text: String,
    code: i32,
}

impl Report {
    fn pass(text: String) -> Self {
        Report {
            text,
            code: EXIT_PASS,
        }
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    let Some(path) = path else {
        return Ok(builtin_catalog());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read catalog {}: {e}", path.display())))?;
    parse_catalog(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn json_lines<T: Serialize>(rows: &T) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("report serializes");
    s.push('\n');
    s
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join("\t");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join("\t"));
        s.push('\n');
    }
    s
}

fn rhs_text(f: &Formula) -> String {
    format!(
        "{}*sqrt({})/pi^{}",
        format_rational(f.rhs.q()),
        f.rhs.radicand(),
        f.rhs.pi_power()
    )
}

fn list(catalog: &Catalog, format: Format) -> Report {
    let text = match format {
        Format::Text => {
            let width = catalog.names().map(str::len).max().unwrap_or(0);
            let mut s = String::new();
            for f in &catalog.formulas {
                let _ = writeln!(
                    s,
                    "{:width$}  {:17}  {}",
                    f.name,
                    f.status.as_str(),
                    f.provenance
                );
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                name: &'a str,
                status: &'a str,
                provenance: &'a str,
            }
            let rows: Vec<_> = catalog
                .formulas
                .iter()
                .map(|f| Row {
                    name: &f.name,
                    status: f.status.as_str(),
                    provenance: &f.provenance,
                })
                .collect();
            json_lines(&rows)
        }
        Format::Tsv => tsv(
            &["name", "status", "provenance"],
            catalog.formulas.iter().map(|f| {
                vec![
                    f.name.clone(),
                    f.status.as_str().into(),
                    f.provenance.clone(),
                ]
            }),
        ),
    };
    Report::pass(text)
}

fn describe(f: &Formula) -> String {
    format!(
        "{}\n  {}\n  sequence: {}\n  provenance: {}\n  status: {}\n",
        f.name,
        render_formula(f),
        f.sequence,
        f.provenance,
        f.status
    )
}

fn formula_row(f: &Formula) -> Vec<String> {
    vec![
        f.name.clone(),
        f.poly
            .coeffs()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(","),
        format_rational(&f.argument),
        rhs_text(f),
        f.status.as_str().into(),
    ]
}

const FORMULA_HEADER: [&str; 5] = ["name", "poly", "argument", "rhs", "status"];

fn show(f: &Formula, format: Format) -> Report {
    Report::pass(match format {
        Format::Text => describe(f),
        Format::Json => json_lines(&formula_json(f)),
        Format::Tsv => tsv(&FORMULA_HEADER, [formula_row(f)]),
    })
}

fn select_formulas<'a>(catalog: &'a Catalog, sel: &Selection) -> Result<Vec<&'a Formula>, Failure> {
    match sel {
        Selection::All => Ok(catalog.formulas.iter().collect()),
        Selection::Names(names) => Ok(names
            .iter()
            .map(|n| catalog.get(n))
            .collect::<Result<_, _>>()?),
    }
}

fn select_claims<'a>(
    catalog: &'a Catalog,
    sel: &Selection,
) -> Result<Vec<&'a CongruenceClaim>, Failure> {
    match sel {
        Selection::All => Ok(catalog.claims.iter().collect()),
        Selection::Names(names) => Ok(names
            .iter()
            .map(|n| catalog.claim(n))
            .collect::<Result<_, _>>()?),
    }
}

#[derive(Serialize)]
struct VerifyRow {
    name: String,
    digits: u32,
    terms: Option<usize>,
    residual: String,
    pass: bool,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn verify(
    catalog: &Catalog,
    sel: &Selection,
    digits: u32,
    allow_suspect: bool,
    format: Format,
    err: &mut dyn Write,
) -> Result<Report, Failure> {
    let chosen: Vec<Formula> = select_formulas(catalog, sel)?
        .into_iter()
        .cloned()
        .collect();
    let results = verify_all(&chosen, digits);
    let mut rows = Vec::with_capacity(chosen.len());
    let mut elapsed = Vec::with_capacity(chosen.len());
    let mut code = EXIT_PASS;
    for (f, r) in chosen.iter().zip(results) {
        let row = match r {
            Ok(rep) => {
                elapsed.push(Some(rep.elapsed));
                VerifyRow {
                    name: rep.name,
                    digits,
                    terms: Some(rep.terms),
                    residual: rep.residual.to_scientific(3),
                    pass: rep.pass,
                    status: f.status.as_str(),
                    error: None,
                }
            }
            Err(e) => {
                writeln!(err, "{}: {e}", f.name)?;
                elapsed.push(None);
                VerifyRow {
                    name: f.name.clone(),
                    digits,
                    terms: None,
                    residual: "NA".into(),
                    pass: false,
                    status: f.status.as_str(),
                    error: Some(e.to_string()),
                }
            }
        };
        if !row.pass && (f.status != Status::Suspect || !allow_suspect) {
            code = EXIT_FAIL;
        }
        rows.push(row);
    }
    let text = match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (r, t) in rows.iter().zip(&elapsed) {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                let suspect = if r.status == Status::Suspect.as_str() {
                    " [suspect]"
                } else {
                    ""
                };
                let terms = r.terms.map_or("-".to_string(), |n| n.to_string());
                let time = t.map_or(String::new(), |t| format!("  {:.2}s", t.as_secs_f64()));
                let _ = writeln!(
                    s,
                    "{:width$}  {verdict}  digits {}  terms {terms:>4}  residual {}{time}{suspect}",
                    r.name, r.digits, r.residual
                );
            }
            let passed = rows.iter().filter(|r| r.pass).count();
            let _ = writeln!(s, "{passed}/{} passed", rows.len());
            s
        }
        Format::Json => json_lines(&rows),
        Format::Tsv => tsv(
            &["name", "digits", "terms", "residual", "pass"],
            rows.iter().map(|r| {
                vec![
                    r.name.clone(),
                    r.digits.to_string(),
                    r.terms.map_or("NA".into(), |n| n.to_string()),
                    r.residual.clone(),
                    r.pass.to_string(),
                ]
            }),
        ),
    };
    Ok(Report { text, code })
}

fn derive(
    catalog: &Catalog,
    name: &str,
    t: &TransformMap,
    save: Option<&Path>,
    format: Format,
) -> Result<Report, Failure> {
    let derived = derive_identity(catalog.get(name)?, t)?;
    if let Some(path) = save {
        let mut target = if path.exists() {
            load_catalog(Some(path))?
        } else {
            Catalog::default()
        };
        target.push(derived.clone())?;
        std::fs::write(path, render_catalog(&target))?;
    }
    Ok(Report::pass(match format {
        Format::Text => describe(&derived),
        Format::Json => json_lines(&formula_json(&derived)),
        Format::Tsv => tsv(&FORMULA_HEADER, [formula_row(&derived)]),
    }))
}

#[derive(Serialize)]
struct ResidueRow {
    claim: String,
    prime: u64,
    valuation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus_power: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn congruence(
    catalog: &Catalog,
    sel: &Selection,
    primes: &[u64],
    candidate: Option<&Rational>,
    format: Format,
    err: &mut dyn Write,
) -> Result<Report, Failure> {
    let claims = select_claims(catalog, sel)?;
    let mut rows = Vec::new();
    let mut code = EXIT_PASS;
    for claim in &claims {
        if let Some(c) = candidate {
            for (&p, r) in primes.iter().zip(candidate_sweep(claim, c, primes)) {
                let (valuation, error) = match r {
                    Ok((_, v)) => (v.to_string(), None),
                    Err(e) => ("NA".into(), Some(e.to_string())),
                };
                rows.push(ResidueRow {
                    claim: claim.name.clone(),
                    prime: p,
                    valuation,
                    modulus_power: None,
                    target: None,
                    pass: None,
                    error,
                });
            }
        }
    }
    if candidate.is_none() {
        let owned: Vec<CongruenceClaim> = claims.iter().map(|c| (*c).clone()).collect();
        let results = congruence_suite(&owned, primes);
        let cells = owned
            .iter()
            .flat_map(|c| primes.iter().map(move |&p| (c, p)));
        for ((claim, p), r) in cells.zip(results) {
            let row = match r {
                Ok(r) => ResidueRow {
                    claim: r.claim,
                    prime: r.prime,
                    valuation: r.valuation.to_string(),
                    modulus_power: Some(claim.modulus_power),
                    target: Some(format_rational(&r.target)),
                    pass: Some(r.pass),
                    error: None,
                },
                Err(e) => {
                    writeln!(err, "{} at p = {p}: {e}", claim.name)?;
                    ResidueRow {
                        claim: claim.name.clone(),
                        prime: p,
                        valuation: "NA".into(),
                        modulus_power: Some(claim.modulus_power),
                        target: None,
                        pass: Some(false),
                        error: Some(e.to_string()),
                    }
                }
            };
            if row.pass == Some(false) {
                code = EXIT_FAIL;
            }
            rows.push(row);
        }
    }
    let text = match format {
        Format::Text => congruence_text(&rows, candidate),
        Format::Json => json_lines(&rows),
        Format::Tsv => {
            let opt = |s: &Option<String>| s.clone().unwrap_or_else(|| "NA".into());
            if candidate.is_some() {
                tsv(
                    &["claim", "prime", "valuation"],
                    rows.iter()
                        .map(|r| vec![r.claim.clone(), r.prime.to_string(), r.valuation.clone()]),
                )
            } else {
                tsv(
                    &[
                        "claim",
                        "prime",
                        "valuation",
                        "modulus_power",
                        "target",
                        "pass",
                    ],
                    rows.iter().map(|r| {
                        vec![
                            r.claim.clone(),
                            r.prime.to_string(),
                            r.valuation.clone(),
                            r.modulus_power.map_or("NA".into(), |m| m.to_string()),
                            opt(&r.target),
                            r.pass.unwrap_or(false).to_string(),
                        ]
                    }),
                )
            }
        }
    };
    Ok(Report { text, code })
}

fn congruence_text(rows: &[ResidueRow], candidate: Option<&Rational>) -> String {
    let mut s = String::new();
    if let Some(c) = candidate {
        let _ = writeln!(s, "valuations of Σ − {c}·χ(p)·p² (no verdict)");
    }
    let mut i = 0;
    while i < rows.len() {
        let claim = &rows[i].claim;
        let group: Vec<&ResidueRow> = rows[i..].iter().take_while(|r| &r.claim == claim).collect();
        i += group.len();
        let vals: Vec<String> = group
            .iter()
            .map(|r| format!("{}:{}", r.prime, r.valuation))
            .collect();
        match group[0].modulus_power {
            Some(m) if candidate.is_none() => {
                let passed = group.iter().filter(|r| r.pass == Some(true)).count();
                let _ = writeln!(
                    s,
                    "{claim}  mod p^{m}  {passed}/{} primes pass",
                    group.len()
                );
                for r in group.iter().filter(|r| r.pass != Some(true)) {
                    let why = r
                        .error
                        .clone()
                        .unwrap_or_else(|| format!("valuation {}", r.valuation));
                    let _ = writeln!(s, "  FAIL p = {}: {why}", r.prime);
                }
            }
            _ => {
                let _ = writeln!(s, "{claim}  {}", vals.join(" "));
            }
        }
    }
    s
}

fn selftest(format: Format) -> Report {
    let checks = run_selftest();
    let code = if checks.iter().all(|c| c.pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{}  {}  {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                name: &'a str,
                pass: bool,
                detail: &'a str,
            }
            let rows: Vec<_> = checks
                .iter()
                .map(|c| Row {
                    name: &c.name,
                    pass: c.pass,
                    detail: &c.detail,
                })
                .collect();
            json_lines(&rows)
        }
        Format::Tsv => tsv(
            &["name", "pass", "detail"],
            checks
                .iter()
                .map(|c| vec![c.name.clone(), c.pass.to_string(), c.detail.clone()]),
        ),
    };
    Report { text, code }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_ranges() {
        assert_eq!(parse_primes("5..13").unwrap(), vec![5, 7, 11, 13]);
        assert_eq!(parse_primes("7,11").unwrap(), vec![7, 11]);
        assert_eq!(parse_primes("3..13").unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_primes("5..20000").unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_primes("9").unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_primes("13..5").unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            Failure::from(Error::UnknownFormula("x".into())).code,
            EXIT_USAGE
        );
        assert_eq!(Failure::from(Error::Divergence("x".into())).code, EXIT_FAIL);
    }
}
