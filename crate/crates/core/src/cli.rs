//! The `sticky-hopf` command line.
//!
//! [`run`] parses arguments and returns the exit code together with
//! everything destined for stdout and stderr, so the binary stays a thin
//! wrapper and tests can drive the CLI in-process.
//!
//! Exit codes: 0 on success, 1 when methods disagree, 2 on usage or parse
//! errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::combinatorics::{cyclic_descent_count, euler_polynomial, eulerian_triangle, zigzag_numbers};
use crate::error::{Error, Result};
use crate::ito_algebra::{Builtin, ItoAlgebra};
use crate::moments::{moment_with_limit, AreaWord, Method, MomentReport, Sigma, ORACLE_LIMIT, ORACLE_LIMIT_EXTENDED};
use crate::scalar::{fmt_rational, parse_rational};
use crate::tensor_hopf::{product, ProductMode, TensorElement};

/// Environment variable holding the worker count for parallel sums.
pub const THREADS_ENV: &str = "STICKY_HOPF_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "sticky-hopf", version, about = "Sticky shuffle Hopf algebras and exact Lévy-area moments")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Allow the permutation oracle up to order 8. It takes minutes there.
    #[arg(long, global = true)]
    pub allow_large_oracle: bool,

    /// Decimal places in the display of evaluated moments.
    #[arg(long, global = true, default_value_t = 6)]
    pub digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the multiplication table of a built-in Itô algebra.
    Table {
        name: String,
        /// Exact σ² for tables that need it.
        #[arg(long)]
        sigma_sq: Option<String>,
    },
    /// Multiply two tensor expressions such as "{dX} + 2{dX*dT}".
    Product {
        algebra: String,
        x: String,
        y: String,
        /// Use the plain shuffle product.
        #[arg(long)]
        nonsticky: bool,
        #[arg(long)]
        sigma_sq: Option<String>,
    },
    /// Moments of a Lévy area.
    Moments {
        #[arg(long)]
        order: usize,
        /// `inf`, `symbolic` or a rational at least 1.
        #[arg(long, default_value = "inf")]
        sigma: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Hopf)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = AreaArg::Normalized)]
        area: AreaArg,
    },
    /// Zigzag numbers, Eulerian numbers and related tables.
    Euler {
        #[arg(long, value_enum)]
        kind: EulerKind,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Hopf,
    Recovery,
    Oracle,
    Closed,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AreaArg {
    /// Normalized quantum area over dAhat, dAhatDag.
    Normalized,
    #[value(name = "classicalZ")]
    ClassicalZ,
    #[value(name = "classicalPlanar")]
    ClassicalPlanar,
    /// Needs a rational --sigma; σ² is taken from it.
    #[value(name = "quantumPQ")]
    QuantumPQ,
    /// Needs a rational --sigma; σ² is taken from it.
    #[value(name = "quantumA")]
    QuantumA,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EulerKind {
    /// A₀ … Aₙ.
    Zigzag,
    /// Row n of the Eulerian triangle.
    Eulerian,
    /// Sₙ(τ).
    Polynomial,
    /// Counts of permutations of Sₙ by cyclic descents.
    Cyclicdescents,
}

/// What a CLI invocation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Sizes the global rayon pool from [`THREADS_ENV`] when it is set.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // Fails only if the pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the CLI on `args`, the first of which is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => return Outcome::usage(e),
    };
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return Outcome::usage(format!("cannot write {}: {e}", path.display()));
        }
        outcome.stdout.clear();
    }
    outcome
}

fn execute(cfg: &CliConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Table { name, sigma_sq } => {
            let alg = load_algebra(name, sigma_sq.as_deref())?;
            Ok(Outcome::ok(cmd_table(&alg, cfg.format)))
        }
        Command::Product { algebra, x, y, nonsticky, sigma_sq } => {
            let alg = Arc::new(load_algebra(algebra, sigma_sq.as_deref())?);
            let mode = if *nonsticky { ProductMode::Shuffle } else { ProductMode::Sticky };
            Ok(Outcome::ok(cmd_product(&alg, x, y, mode, cfg.format)?))
        }
        Command::Moments { order, sigma, a, b, method, area } => {
            let sigma: Sigma = sigma.parse()?;
            let (a, b) = (parse_rational(a)?, parse_rational(b)?);
            let area = build_area(*area, &sigma)?;
            let limit = if cfg.allow_large_oracle { ORACLE_LIMIT_EXTENDED } else { ORACLE_LIMIT };
            cmd_moments(&area, *order, &a, &b, &sigma, *method, limit, cfg)
        }
        Command::Euler { kind, n } => Ok(Outcome::ok(cmd_euler(*kind, *n, cfg.format))),
    }
}

fn load_algebra(name: &str, sigma_sq: Option<&str>) -> Result<ItoAlgebra> {
    let builtin: Builtin = name.parse()?;
    let s2 = sigma_sq.map(parse_rational).transpose()?;
    builtin.algebra(s2.as_ref())
}

fn build_area(kind: AreaArg, sigma: &Sigma) -> Result<AreaWord> {
    let sigma_sq = || match sigma {
        Sigma::Value(s) => Ok(s * s),
        _ => Err(Error::InvalidSigma(format!("{sigma} (this area needs a rational sigma)"))),
    };
    match kind {
        AreaArg::Normalized => Ok(AreaWord::normalized_quantum()),
        AreaArg::ClassicalZ => Ok(AreaWord::classical_z()),
        AreaArg::ClassicalPlanar => Ok(AreaWord::classical_planar()),
        AreaArg::QuantumPQ => AreaWord::quantum_pq(sigma_sq()?),
        AreaArg::QuantumA => AreaWord::quantum_a(sigma_sq()?),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("plain data");
    s.push('\n');
    s
}

/// The table with row labels on the left factor, as in a printed Itô table.
pub fn cmd_table(alg: &ItoAlgebra, format: Format) -> String {
    let names: Vec<&str> = (0..alg.dim()).map(|i| alg.label_name(i)).collect();
    let cells = alg.render_table();
    match format {
        Format::Json => to_json_line(&alg.to_json()),
        Format::Csv => {
            let mut out = String::from("left,right,product\n");
            for (i, row) in cells.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    let _ = writeln!(out, "{},{},{}", names[i], names[j], csv_field(cell));
                }
            }
            out
        }
        Format::Text => {
            let first = names.iter().map(|n| n.len()).max().unwrap_or(0);
            let widths: Vec<usize> = (0..names.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([names[j].len()]).max().unwrap_or(0))
                .collect();
            let mut out = format!("{:first$} |", "");
            for (j, n) in names.iter().enumerate() {
                let _ = write!(out, " {:w$}", n, w = widths[j]);
            }
            out = out.trim_end().to_string();
            out.push('\n');
            let _ = writeln!(out, "{}", "-".repeat(first + 2 + widths.iter().map(|w| w + 1).sum::<usize>()));
            for (i, row) in cells.iter().enumerate() {
                let mut line = format!("{:first$} |", names[i]);
                for (j, cell) in row.iter().enumerate() {
                    let _ = write!(line, " {:w$}", cell, w = widths[j]);
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out
        }
    }
}

/// Product of two parsed expressions.
pub fn cmd_product(alg: &Arc<ItoAlgebra>, x: &str, y: &str, mode: ProductMode, format: Format) -> Result<String> {
    let x = TensorElement::parse(alg, x)?;
    let y = TensorElement::parse(alg, y)?;
    let p = product(&x, &y, mode)?;
    Ok(match format {
        Format::Text => format!("{}\n", p.render()),
        Format::Json => to_json_line(&p.to_json()),
        Format::Csv => {
            let mut out = String::from("word,coefficient\n");
            for (w, c) in p.terms() {
                let word: Vec<&str> = w.letters().iter().map(|&l| alg.label_name(l)).collect();
                let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
                let _ = writeln!(out, "{},{}", csv_field(&word), csv_field(&c.to_string()));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct MomentsAllJson {
    reports: Vec<crate::moments::MomentReportJson>,
    skipped: Vec<String>,
    agree: bool,
}

/// Moments by one method, or by every available method with a verdict.
#[allow(clippy::too_many_arguments)]
fn cmd_moments(
    area: &AreaWord,
    order: usize,
    a: &BigRational,
    b: &BigRational,
    sigma: &Sigma,
    method: MethodArg,
    oracle_limit: usize,
    cfg: &CliConfig,
) -> Result<Outcome> {
    let single = |m: Method| moment_with_limit(area, order, a, b, sigma, m, oracle_limit);
    let one = match method {
        MethodArg::Hopf => Some(Method::Hopf),
        MethodArg::Recovery => Some(Method::Recovery),
        MethodArg::Oracle => Some(Method::Oracle),
        MethodArg::Closed => Some(Method::Closed),
        MethodArg::All => None,
    };
    if let Some(m) = one {
        let r = single(m)?;
        return Ok(Outcome::ok(render_reports(std::slice::from_ref(&r), &[], None, cfg)));
    }
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for m in Method::ALL {
        match single(m) {
            Ok(r) => reports.push(r),
            Err(Error::MethodUnavailable { .. }) => skipped.push(format!("{m}: not defined for this area")),
            Err(Error::OracleLimit { limit, .. }) => {
                skipped.push(format!("{m}: order above {limit}, pass --allow-large-oracle"))
            }
            Err(e) => return Err(e),
        }
    }
    let agree = reports.windows(2).all(|w| w[0].w == w[1].w);
    let stdout = render_reports(&reports, &skipped, Some(agree), cfg);
    Ok(Outcome {
        code: if agree { 0 } else { 1 },
        stdout,
        stderr: if agree { String::new() } else { "error: methods disagree\n".to_string() },
    })
}

fn render_reports(reports: &[MomentReport], skipped: &[String], verdict: Option<bool>, cfg: &CliConfig) -> String {
    match cfg.format {
        Format::Json => match verdict {
            None => to_json_line(&reports[0].to_json()),
            Some(agree) => to_json_line(&MomentsAllJson {
                reports: reports.iter().map(MomentReport::to_json).collect(),
                skipped: skipped.to_vec(),
                agree,
            }),
        },
        Format::Csv => {
            let mut out = String::from("order,method,w,a,b,sigma,moment\n");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.order,
                    r.method,
                    csv_field(&r.w.to_string()),
                    fmt_rational(&r.a),
                    fmt_rational(&r.b),
                    r.sigma,
                    csv_field(&r.moment.to_string())
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let _ = write!(out, "{:<8} w = {}  moment = {}", r.method.name(), r.w, r.moment);
                if let Some(d) = r.moment_decimal(cfg.digits) {
                    let _ = write!(out, "  ({d})");
                }
                out.push('\n');
            }
            for s in skipped {
                let _ = writeln!(out, "skipped  {s}");
            }
            if let Some(agree) = verdict {
                out.push_str(if agree { "match\n" } else { "MISMATCH\n" });
            }
            out
        }
    }
}

#[derive(Serialize)]
struct EulerJson {
    kind: &'static str,
    n: usize,
    values: Vec<String>,
}

fn euler_values(kind: EulerKind, n: usize) -> Vec<BigUint> {
    match kind {
        EulerKind::Zigzag => zigzag_numbers(n),
        EulerKind::Eulerian => eulerian_triangle(n).pop().expect("nonempty"),
        EulerKind::Polynomial => euler_polynomial(n),
        EulerKind::Cyclicdescents => (0..=n).map(|j| cyclic_descent_count(n, j)).collect(),
    }
}

fn render_tau_poly(coeffs: &[BigUint]) -> String {
    let mut parts = Vec::new();
    for (j, c) in coeffs.iter().enumerate() {
        if *c == BigUint::default() {
            continue;
        }
        let one = *c == BigUint::from(1u8);
        parts.push(match j {
            0 => c.to_string(),
            1 if one => "t".to_string(),
            1 => format!("{c} t"),
            _ if one => format!("t^{j}"),
            _ => format!("{c} t^{j}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Euler-number tables. CSV rows are `n,j,value`; for zigzag numbers `n` is
/// the index and `j` is left empty.
pub fn cmd_euler(kind: EulerKind, n: usize, format: Format) -> String {
    let values = euler_values(kind, n);
    let name = match kind {
        EulerKind::Zigzag => "zigzag",
        EulerKind::Eulerian => "eulerian",
        EulerKind::Polynomial => "polynomial",
        EulerKind::Cyclicdescents => "cyclicdescents",
    };
    match format {
        Format::Json => {
            to_json_line(&EulerJson { kind: name, n, values: values.iter().map(ToString::to_string).collect() })
        }
        Format::Csv => {
            let mut out = String::from("n,j,value\n");
            for (k, v) in values.iter().enumerate() {
                match kind {
                    EulerKind::Zigzag => writeln!(out, "{k},,{v}"),
                    _ => writeln!(out, "{n},{k},{v}"),
                }
                .expect("writing to a String");
            }
            out
        }
        Format::Text => {
            if kind == EulerKind::Polynomial {
                format!("{}\n", render_tau_poly(&values))
            } else {
                let v: Vec<String> = values.iter().map(ToString::to_string).collect();
                format!("{}\n", v.join(","))
            }
        }
    }
}
