//! Command-line front end for the `vvmf` binary.
//!
//! Exit codes: 0 success, 2 malformed input, 3 mathematical failure
//! (including any failed check in `verify`).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::basis::{self, BasisBuilder};
use crate::dimensions;
use crate::error::{Error, Result};
use crate::families::{self, Family2DSpec, FamilyClass};
use crate::forms;
use crate::fundamental::{self, FundamentalMatrix};
use crate::io::{self, MultiplierSpec};
use crate::multiplier::MultiplierData;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "vvmf",
    version,
    about = "Exact vector-valued modular forms for SL2(Z)"
)]
pub struct Cli {
    /// Truncation order N.
    #[arg(long, global = true, env = "VVMF_DEFAULT_ORDER", default_value_t = 30)]
    pub order: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Multiplier spec JSON: {"d","w","alpha","beta","lambda","chi"}.
    #[arg(long)]
    pub input: PathBuf,
    /// Exponent override, comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family class 1, 2 or 3.
    #[arg(long = "class")]
    pub class: u8,
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub x: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// A standard series: E2 E4 E6 E8 E10 E14 Delta J.
    Series { name: String },
    /// Fundamental matrix from (Lambda, chi, w).
    Fundamental {
        #[command(flatten)]
        input: InputArgs,
        /// Raise the weight by 2i (i in 1..=6).
        #[arg(long)]
        shift: Option<usize>,
    },
    /// Basis element X^(j;n), j counted from 1.
    Basis {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short = 'j')]
        j: usize,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Serre dual fundamental matrix.
    Dual {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Index and tight dimension at a weight.
    Dims {
        #[command(flatten)]
        input: InputArgs,
        /// Target weight w' (defaults to the spec weight).
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Tight Hilbert-Poincare series and generator weights.
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Rank-1 family member of weight 12u + 2j + 12n.
    Family1d {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        j: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        n: i64,
    },
    /// Rank-2 family member: spec and fundamental matrix.
    Family2d {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also run the verification suite.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Run every structural check on a spec or a family member.
    Verify {
        #[arg(long, conflicts_with = "class")]
        input: Option<PathBuf>,
        #[arg(long = "class", requires = "t")]
        class: Option<u8>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        x: String,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
}

/// Result of a run: exit code and the text to print on stdout or stderr.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs the job.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(report) => {
            let code = if report.ok { 0 } else { 3 };
            Outcome {
                code,
                stdout: render(&report, cli.format),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = if e.is_input_error() { 2 } else { 3 };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

struct Report {
    ok: bool,
    json: Value,
    text: String,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report {
            ok: true,
            json,
            text,
        }
    }
}

fn render(r: &Report, f: Format) -> String {
    match f {
        Format::Json => serde_json::to_string_pretty(&r.json).unwrap() + "\n",
        Format::Text => r.text.clone(),
    }
}

fn read_spec(path: &PathBuf) -> Result<MultiplierSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    MultiplierSpec::parse(&text)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

fn spec_and_lambda(input: &InputArgs) -> Result<(MultiplierSpec, MultiplierData, Vec<Rational>)> {
    let spec = read_spec(&input.input)?;
    let m = spec.multiplier()?;
    let lambda = match &input.lambda {
        Some(s) => parse_list(s)?,
        None => spec.require_lambda()?,
    };
    if lambda.len() != m.d {
        return Err(Error::InvalidInput(format!(
            "lambda has {} entries, d = {}",
            lambda.len(),
            m.d
        )));
    }
    Ok((spec, m, lambda))
}

fn need_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidInput(
            "--order must be at least 2 for fundamental-matrix work".into(),
        ));
    }
    Ok(())
}

fn fundamental_from(
    input: &InputArgs,
    order: usize,
) -> Result<(MultiplierData, FundamentalMatrix)> {
    need_order(order)?;
    let (spec, m, lambda) = spec_and_lambda(input)?;
    let fm = fundamental::solve_recursion(&lambda, &spec.chi()?, &m.w, order)?;
    Ok((m, fm))
}

fn matrix_text(fm: &FundamentalMatrix) -> String {
    let mut out = String::new();
    let lam: Vec<String> = fm.lambda.iter().map(format_rational).collect();
    let _ = writeln!(out, "w = {}", format_rational(&fm.w));
    let _ = writeln!(out, "Lambda = diag({})", lam.join(", "));
    for (n, m) in fm.coeffs.iter().enumerate() {
        let rows: Vec<String> = m
            .rows()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(format_rational).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        let _ = writeln!(out, "Xi_{n} = [{}]", rows.join(", "));
    }
    out
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let order = cli.order;
    match &cli.command {
        Command::Series { name } => {
            let s = forms::standard_series(name, order)?;
            Ok(Report::ok(io::series_json(&s), format!("{s}\n")))
        }
        Command::Fundamental { input, shift } => {
            let (m, mut fm) = fundamental_from(input, order)?;
            if let Some(i) = shift {
                fm = fundamental::weight_shift(&fm, *i, &m)?;
            }
            Ok(Report::ok(io::fundamental_json(&fm), matrix_text(&fm)))
        }
        Command::Basis { input, j, n } => {
            let (_, fm) = fundamental_from(input, order)?;
            if *j == 0 || *j > fm.d() {
                return Err(Error::InvalidInput(format!("-j must be in 1..={}", fm.d())));
            }
            let e = BasisBuilder::new(&fm).element(j - 1, *n)?;
            let comps: Vec<Value> = e.series.iter().map(io::series_json).collect();
            let polys: Vec<Value> = e.poly.iter().map(|p| io::vector_json(p)).collect();
            let mut text = format!("X^({j};{n})\n");
            for (i, s) in e.series.iter().enumerate() {
                let _ = writeln!(text, "  [{}] {s}", i + 1);
            }
            Ok(Report::ok(
                json!({"j": j, "n": n, "components": comps, "poly_in_J": polys}),
                text,
            ))
        }
        Command::Dual { input } => {
            let (_, fm) = fundamental_from(input, order)?;
            let dual = basis::serre_dual(&fm)?;
            Ok(Report::ok(io::fundamental_json(&dual), matrix_text(&dual)))
        }
        Command::Dims { input, weight } => {
            let (_, m, lambda) = spec_and_lambda(input)?;
            let w = match weight {
                Some(s) => parse_rational(s)?,
                None => m.w.clone(),
            };
            let index = dimensions::index(&m, &lambda);
            let diff = dimensions::dim_difference(&m, &lambda, &w)?;
            let dim = dimensions::dim_tight(&m, &lambda, &w)?;
            let c = m.c_at_weight(&w)?;
            let text = format!(
                "weight {}: c = {}, index = {}, dim (tight) = {dim}, dim difference = {}\n",
                format_rational(&w),
                format_rational(&c),
                format_rational(&index),
                format_rational(&diff)
            );
            Ok(Report::ok(
                json!({
                    "weight": io::rational_json(&w),
                    "c": io::rational_json(&c),
                    "index": io::rational_json(&index),
                    "dim_tight": dim,
                    "dim_difference": io::rational_json(&diff),
                    "conditional_on_tightness": true,
                }),
                text,
            ))
        }
        Command::Hilbert { input } => {
            let (_, m, lambda) = spec_and_lambda(input)?;
            let h = dimensions::hilbert_tight(&m, &lambda)?;
            let ws: Vec<String> = h.generator_weights.iter().map(format_rational).collect();
            let text = format!(
                "H(x) = x^{} ({}) / ((1-x^4)(1-x^6))\ngenerator weights: {}\n",
                format_rational(&h.w0prime),
                h.numerator_counts
                    .iter()
                    .enumerate()
                    .map(|(k, c)| format!("{c} x^{}", 2 * k))
                    .collect::<Vec<_>>()
                    .join(" + "),
                ws.join(", ")
            );
            Ok(Report::ok(
                json!({
                    "w0prime": io::rational_json(&h.w0prime),
                    "numeratorCounts": h.numerator_counts,
                    "generatorWeights": io::vector_json(&h.generator_weights),
                    "gap_free": dimensions::gap_check(&h.generator_weights),
                    "conditional_on_tightness": true,
                }),
                text,
            ))
        }
        Command::Family1d { u, j, n } => {
            let u = parse_rational(u)?;
            let (lambda, s) = families::family_1d(&u, *j, *n, order)?;
            let m = families::family_1d_multiplier(&u, *j, *n)?;
            let text = format!(
                "weight {}: Lambda = {}\n{s}\n",
                format_rational(&m.w),
                format_rational(&lambda)
            );
            Ok(Report::ok(
                json!({"weight": io::rational_json(&m.w), "Lambda": io::rational_json(&lambda), "series": io::series_json(&s)}),
                text,
            ))
        }
        Command::Family2d {
            family,
            verify,
            tolerance,
        } => {
            need_order(order)?;
            let spec = family_spec(family.class, &family.t, &family.x)?;
            let (m, lambda, chi) = families::family_2d(&spec)?;
            let fm = fundamental::solve_recursion(&lambda, &chi, &m.w, order)?;
            let spec_json =
                serde_json::to_value(MultiplierSpec::from_parts(&m, Some(&lambda), Some(&chi)))
                    .unwrap();
            let mut json = json!({"spec": spec_json, "fundamental": io::fundamental_json(&fm)});
            let mut text = matrix_text(&fm);
            let mut ok = true;
            if *verify {
                let checks = run_checks(&m, &fm, Some(&spec), *tolerance);
                ok = checks.iter().all(|c| c.passed);
                text.push_str(&checks_text(&checks));
                json["verify"] = checks_json(&checks);
            }
            Ok(Report { ok, json, text })
        }
        Command::Verify {
            input,
            class,
            t,
            x,
            tolerance,
        } => {
            need_order(order)?;
            let (m, fm, family) = match (input, class) {
                (Some(path), None) => {
                    let spec = read_spec(path)?;
                    let m = spec.multiplier()?;
                    let fm = fundamental::solve_recursion(
                        &spec.require_lambda()?,
                        &spec.chi()?,
                        &m.w,
                        order,
                    )?;
                    (m, fm, None)
                }
                (None, Some(k)) => {
                    let spec = family_spec(*k, t.as_deref().unwrap_or_default(), x)?;
                    let (m, lambda, chi) = families::family_2d(&spec)?;
                    let fm = fundamental::solve_recursion(&lambda, &chi, &m.w, order)?;
                    (m, fm, Some(spec))
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "verify needs --input or --class/--t".into(),
                    ))
                }
            };
            let checks = run_checks(&m, &fm, family.as_ref(), *tolerance);
            let ok = checks.iter().all(|c| c.passed);
            Ok(Report {
                ok,
                json: json!({"order": order, "checks": checks_json(&checks), "all_passed": ok}),
                text: checks_text(&checks),
            })
        }
    }
}

fn family_spec(class: u8, t: &str, x: &str) -> Result<Family2DSpec> {
    Ok(Family2DSpec::new(
        FamilyClass::from_index(class)?,
        parse_rational(t)?,
        parse_rational(x)?,
    ))
}

/// One row of the verification table.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, r: Result<bool>) -> Check {
    match r {
        Ok(p) => Check {
            name,
            passed: p,
            detail: String::new(),
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// The verification suite for a fundamental matrix and its multiplicities.
pub fn run_checks(
    m: &MultiplierData,
    fm: &FundamentalMatrix,
    family: Option<&Family2DSpec>,
    tolerance: f64,
) -> Vec<Check> {
    let mut out = Vec::new();
    let with_exp = m.clone().with_exponent(fm.lambda.clone());
    out.push(check(
        "trace integrality",
        with_exp.and_then(|m| m.trace_integrality_check()),
    ));
    out.push(check("trace equals c", Ok(fm.trace() == m.c_value())));
    let am = fm.a_matrices();
    out.push(check(
        "A2 + A3 = Lambda_w",
        Ok(am.a2.add(&am.a3) == fm.lambda_w()),
    ));
    out.push(check(
        "elliptic identities",
        Ok(fundamental::verify_elliptic(&am)),
    ));
    out.push(check(
        "differential equation residual",
        fundamental::ode_residual_vanishes(fm),
    ));
    out.push(check(
        "det identity",
        fundamental::det_identity_check(fm, m),
    ));
    out.push(check(
        "duality symmetry (M=3)",
        basis::serre_dual(fm).and_then(|d| basis::duality_symmetry_check(fm, &d, 3)),
    ));
    if let Some(spec) = family {
        let n = fm.order().min(10);
        out.push(check(
            "hypergeometric oracle",
            families::oracle_compare(fm, spec, n),
        ));
        match families::fixed_point_check(fm, spec, tolerance) {
            Ok(r) => out.push(Check {
                name: "monodromy fixed points",
                passed: r.passed(),
                detail: format!(
                    "residual(i) = {:.3e}, residual(xi6) = {:.3e}, tolerance = {:e}",
                    r.residual_i, r.residual_xi6, r.tolerance
                ),
            }),
            Err(e) => out.push(Check {
                name: "monodromy fixed points",
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    out
}

fn checks_text(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let _ = write!(
            s,
            "{:<31} {}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" }
        );
        if !c.detail.is_empty() {
            let _ = write!(s, "  ({})", c.detail);
        }
        s.push('\n');
    }
    s
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({"check": c.name, "passed": c.passed, "detail": c.detail}))
            .collect(),
    )
}
