//! Command-line definitions and dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use superdyn::dynamical::{
    decompose_canonical, expand_gamma, gauge_classical, gauge_quantum, quantize_pipeline, r_canonical, r_rat, r_rat_gamma_shifted,
    r_x_with_step, semiclassical_limit, ClassicalGauge, QuantumGauge, QuasiConstant, TwoForm, ZeroWeightOp,
};
use superdyn::expr::{format_expr, RatExpr, Rational};
use superdyn::graded::GradedSpace;
use superdyn::verify::{
    beta_recursion_check, cdybe_residual, check_zero_weight, classify_hecke_r, coefficient_equation_suite, hecke_check, qdybe_residual,
    qdybe_residual_sampled, unitarity_residual, HeckeMode, HeckeParams,
};

use crate::document::{
    parse, parse_index_list, parse_partition, parse_rational, parse_rational_list, read_json, to_json, write_text, FormMatrix, Metadata,
    OperatorDocument, OperatorKind, SCHEMA_VERSION,
};
use crate::report::{CheckReport, ReportDocument, Status};
use crate::CliError;

/// Seed for the random-evaluation checks when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Directory for reports when a command is not given `--report`.
pub const REPORT_DIR_ENV: &str = "SUPERDYN_REPORT_DIR";

#[derive(Parser, Debug)]
#[command(name = "superdyn", version, about = "Exact construction and verification of super dynamical r- and R-matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an operator from one of the standard families.
    Construct(ConstructArgs),
    /// Run one exact check on an operator document.
    Verify(VerifyArgs),
    /// Apply a gauge transformation.
    Gauge(GaugeArgs),
    /// Taylor-expand a quantum R-matrix in the step g.
    Expand(ExpandArgs),
    /// Quantize a classical r-matrix of canonical form.
    Quantize(QuantizeArgs),
    /// Reduce a Hecke-type R-matrix to interval form.
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    #[value(name = "r-rat")]
    RRat,
    #[value(name = "r-canonical")]
    RCanonical,
    #[value(name = "R-X")]
    RX,
    #[value(name = "R-rat-gamma")]
    RRatGamma,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub family: Family,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    /// Interval partition such as `1-2,4-5`; empty for no intervals.
    #[arg(long, default_value = "")]
    pub partition: String,
    /// Comma-separated rationals `ν_1,…,ν_N` (r-canonical).
    #[arg(long)]
    pub nu: Option<String>,
    /// Comma-separated rationals `μ_1,…,μ_N` (R-X, R-rat-gamma).
    #[arg(long)]
    pub mu: Option<String>,
    /// JSON `N × N` matrix of the closed 2-form `D` (r-canonical).
    #[arg(long = "D-file")]
    pub d_file: Option<PathBuf>,
    /// Step of R-X (default 1).
    #[arg(long)]
    pub step: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Check {
    Cdybe,
    Qdybe,
    #[value(name = "zero-weight")]
    ZeroWeight,
    Unitarity,
    #[value(name = "coeff-suite")]
    CoeffSuite,
    Hecke,
    #[value(name = "beta-recursion")]
    BetaRecursion,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Cdybe => "cdybe",
            Check::Qdybe => "qdybe",
            Check::ZeroWeight => "zero-weight",
            Check::Unitarity => "unitarity",
            Check::CoeffSuite => "coeff-suite",
            Check::Hecke => "hecke",
            Check::BetaRecursion => "beta-recursion",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Strong,
    Weak,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Where to write the report; defaults to `$SUPERDYN_REPORT_DIR/<command>.json` if set.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Seed for random evaluation points.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Record wall-clock timings (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub check: Check,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value = "1")]
    pub p: String,
    #[arg(long, default_value = "1")]
    pub q: String,
    #[arg(long, value_enum, default_value_t = Mode::Strong)]
    pub mode: Mode,
    /// Unitarity constant; only 0 is supported.
    #[arg(long, default_value = "0")]
    pub epsilon: String,
    /// Check QDYBE by exact evaluation at this many random points instead
    /// of symbolically.
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Args, Debug)]
pub struct GaugeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Classical: form, shift, rescale, permute, identity (or 1-5).
    /// Quantum: form, permute, scale, reparametrize (or 1-4).
    #[arg(long = "type")]
    pub kind: String,
    /// JSON matrix of `D` (classical form) or `φ` (quantum form).
    #[arg(long = "form-file")]
    pub form_file: Option<PathBuf>,
    /// Comma-separated rational shift vector.
    #[arg(long)]
    pub shift: Option<String>,
    /// Scalar for rescale, identity, scale and reparametrize.
    #[arg(long)]
    pub c: Option<String>,
    /// Comma-separated 1-based images `τ(1),…,τ(N)`.
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QuantizeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Taylor coefficients `C_k` of `R = Σ g^k C_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDocument {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub orders: Vec<OperatorDocument>,
    /// `−C_1` when `C_0 = Id`.
    pub semiclassical_limit: Option<OperatorDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuPair {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDocument {
    pub schema_version: u32,
    pub classes: Vec<Vec<usize>>,
    pub tau: Vec<usize>,
    pub mu_pairs: Vec<MuPair>,
    pub mu: Vec<String>,
    pub partition: String,
    pub standard_grading: bool,
    pub phi: FormMatrix,
    pub canonical: OperatorDocument,
}

/// Outcome of a command: text for standard output and whether it passed.
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Gauge(a) => gauge(a),
        Command::Expand(a) => expand(a),
        Command::Quantize(a) => quantize(a),
        Command::Classify(a) => classify(a),
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        Some(p) => {
            write_text(p, &text)?;
            Ok(Outcome { stdout: String::new(), passed: true })
        }
        None => Ok(Outcome { stdout: text, passed: true }),
    }
}

fn load(path: &Path) -> Result<(OperatorDocument, ZeroWeightOp), CliError> {
    let doc: OperatorDocument = read_json(path)?;
    let op = doc.to_operator()?;
    Ok((doc, op))
}

fn rationals_for(space: &GradedSpace, text: Option<&str>, what: &str) -> Result<Vec<Rational>, CliError> {
    let n = space.dim();
    match text {
        None => Ok(vec![Rational::from_integer(0.into()); n]),
        Some(t) => {
            let v = parse_rational_list(t)?;
            if v.len() != n {
                return Err(CliError::Usage(format!("--{what} needs {n} entries, got {}", v.len())));
            }
            Ok(v)
        }
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| format_expr(&RatExpr::from_rational(x.clone()))).collect()
}

fn construct(a: ConstructArgs) -> Result<Outcome, CliError> {
    let space = GradedSpace::new(a.m, a.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let x = parse_partition(&space, &a.partition)?;
    let mut meta = Metadata { partition: Some(x.to_string()), ..Metadata::default() };
    let doc = match a.family {
        Family::RRat => {
            meta.provenance = Some("construct r-rat".into());
            OperatorDocument::from_operator(&r_rat(&x), OperatorKind::ClassicalR, None, meta)
        }
        Family::RCanonical => {
            let nu = rationals_for(&space, a.nu.as_deref(), "nu")?;
            let d = match &a.d_file {
                Some(p) => read_json::<FormMatrix>(p)?.to_two_form(space.dim())?,
                None => TwoForm::zero(space.dim()),
            };
            let r = r_canonical(&x, &d, &nu).map_err(|e| CliError::Usage(e.to_string()))?;
            meta.nu = Some(strings(&nu));
            meta.provenance = Some("construct r-canonical".into());
            OperatorDocument::from_operator(&r, OperatorKind::ClassicalR, None, meta)
        }
        Family::RX | Family::RRatGamma => {
            let mu = rationals_for(&space, a.mu.as_deref(), "mu")?;
            let q = QuasiConstant::from_rationals(&mu);
            meta.mu = Some(strings(&mu));
            let (r, step) = if let Family::RX = a.family {
                let step = parse(a.step.as_deref().unwrap_or("1"))?;
                if step.is_zero() {
                    return Err(CliError::Usage("--step must be nonzero".into()));
                }
                meta.provenance = Some("construct R-X".into());
                (r_x_with_step(&x, &q, &step)?, step)
            } else {
                meta.provenance = Some("construct R-rat-gamma".into());
                (r_rat_gamma_shifted(&x, &q)?, RatExpr::g())
            };
            OperatorDocument::from_operator(&r, OperatorKind::QuantumR, Some(&step), meta)
        }
    };
    emit(to_json(&doc), a.out.as_deref())
}

fn finish_report(report: &ReportDocument, args: &ReportArgs, command: &str) -> Result<String, CliError> {
    let text = to_json(report);
    let path = match (&args.report, std::env::var_os(REPORT_DIR_ENV)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(PathBuf::from(dir).join(format!("{command}.json"))),
        (None, None) => None,
    };
    if let Some(p) = path {
        write_text(&p, &text)?;
    }
    Ok(text)
}

fn verify(a: VerifyArgs) -> Result<Outcome, CliError> {
    let (doc, r) = load(&a.input)?;
    let mut report = ReportDocument::new("verify", Some(a.input.display().to_string()), a.report.seed);
    let start = Instant::now();
    let name = a.check.name();
    let residual = match a.check {
        Check::Cdybe => cdybe_residual(&r),
        Check::ZeroWeight => check_zero_weight(&r.to_homop()),
        Check::Unitarity => unitarity_residual(&r, &parse_rational(&a.epsilon)?)?,
        Check::Qdybe => {
            let step = doc.required_step()?;
            match a.points {
                Some(k) => {
                    report.notes.push(format!("exact evaluation at {k} random points"));
                    qdybe_residual_sampled(&r, &step, None, k, a.report.seed)?
                }
                None => qdybe_residual(&r, &step),
            }
        }
        Check::CoeffSuite => coefficient_equation_suite(&r, &doc.required_step()?)?,
        Check::Hecke => {
            let params = HeckeParams::new(parse_rational(&a.p)?, parse_rational(&a.q)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let mode = match a.mode {
                Mode::Strong => HeckeMode::Strong,
                Mode::Weak => HeckeMode::Weak,
            };
            hecke_check(&r, &params, mode)
        }
        Check::BetaRecursion => beta_recursion_check(&r),
    };
    report.push(CheckReport::from_residual(name, &residual));
    if a.report.timings {
        report.record_time(name, start.elapsed().as_millis());
    }
    let text = finish_report(&report, &a.report, &format!("verify-{name}"))?;
    Ok(Outcome { stdout: text, passed: report.status == Status::Pass })
}

fn gauge_type(kind: &str, quantum: bool) -> Result<u8, CliError> {
    let t = match (kind, quantum) {
        ("form" | "1", _) => 1,
        ("shift" | "2", false) | ("permute" | "2", true) => 2,
        ("rescale" | "3", false) | ("scale" | "3", true) => 3,
        ("permute" | "4", false) | ("reparametrize" | "4", true) => 4,
        ("identity" | "5", false) => 5,
        _ => {
            let which = if quantum { "quantum" } else { "classical" };
            return Err(CliError::Usage(format!("unknown {which} gauge type {kind:?}")));
        }
    };
    Ok(t)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("this gauge type needs --{flag}")))
}

fn gauge(a: GaugeArgs) -> Result<Outcome, CliError> {
    let (doc, r) = load(&a.input)?;
    let space = r.space().clone();
    let n = space.dim();
    let usage = |e: superdyn::dynamical::DynError| CliError::Usage(e.to_string());
    let (out, step, desc) = match doc.kind {
        OperatorKind::ClassicalR => {
            let t = match gauge_type(&a.kind, false)? {
                1 => {
                    let path = a.form_file.as_ref().ok_or_else(|| CliError::Usage("this gauge type needs --form-file".into()))?;
                    ClassicalGauge::AddClosedForm(read_json::<FormMatrix>(path)?.to_two_form(n)?)
                }
                2 => ClassicalGauge::Shift(parse_rational_list(need(&a.shift, "shift")?)?),
                3 => ClassicalGauge::Rescale(parse_rational(need(&a.c, "c")?)?),
                4 => ClassicalGauge::Permute(parse_index_list(need(&a.tau, "tau")?)?),
                _ => ClassicalGauge::AddIdentity(parse_rational(need(&a.c, "c")?)?),
            };
            (gauge_classical(&r, &t).map_err(usage)?, None, format!("{t:?}"))
        }
        OperatorKind::QuantumR => {
            let step = doc.required_step()?;
            let t = match gauge_type(&a.kind, true)? {
                1 => {
                    let path = a.form_file.as_ref().ok_or_else(|| CliError::Usage("this gauge type needs --form-file".into()))?;
                    QuantumGauge::MultiplyForm(read_json::<FormMatrix>(path)?.to_mult_form(&space, &step)?)
                }
                2 => QuantumGauge::Permute(parse_index_list(need(&a.tau, "tau")?)?),
                3 => QuantumGauge::Scale(parse(need(&a.c, "c")?)?),
                _ => QuantumGauge::Reparametrize {
                    c: parse_rational(need(&a.c, "c")?)?,
                    mu: match &a.shift {
                        Some(s) => parse_rational_list(s)?,
                        None => vec![Rational::from_integer(0.into()); n],
                    },
                },
            };
            let desc = match &t {
                QuantumGauge::MultiplyForm(_) => "MultiplyForm".to_string(),
                other => format!("{other:?}"),
            };
            let (out, new_step) = gauge_quantum(&r, &step, &t).map_err(usage)?;
            (out, Some(new_step), desc)
        }
    };
    let meta = Metadata { provenance: Some(format!("gauge {desc}")), ..Metadata::default() };
    let out_doc = OperatorDocument::from_operator(&out, doc.kind, step.as_ref(), meta);
    emit(to_json(&out_doc), a.out.as_deref())
}

fn expand(a: ExpandArgs) -> Result<Outcome, CliError> {
    let (_, r) = load(&a.input)?;
    let coeffs = expand_gamma(&r, a.order)?;
    let orders = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let meta = Metadata { provenance: Some(format!("expand order {k}")), ..Metadata::default() };
            OperatorDocument::from_operator(c, OperatorKind::ClassicalR, None, meta)
        })
        .collect();
    let limit = semiclassical_limit(&r).ok().map(|l| {
        let meta = Metadata { provenance: Some("semiclassical limit".into()), ..Metadata::default() };
        OperatorDocument::from_operator(&l, OperatorKind::ClassicalR, None, meta)
    });
    let space = r.space();
    let doc = ExpansionDocument { schema_version: SCHEMA_VERSION, m: space.m(), n: space.n(), orders, semiclassical_limit: limit };
    emit(to_json(&doc), a.out.as_deref())
}

fn quantize(a: QuantizeArgs) -> Result<Outcome, CliError> {
    let (_, r) = load(&a.input)?;
    let mut report = ReportDocument::new("quantize", Some(a.input.display().to_string()), a.report.seed);
    let start = Instant::now();
    let (x, d, nu) = decompose_canonical(&r).map_err(|e| CliError::Usage(e.to_string()))?;
    let result = quantize_pipeline(&x, &d, &nu);
    if a.report.timings {
        report.record_time("pipeline", start.elapsed().as_millis());
    }
    match result {
        Ok((big_r, pr)) => {
            report.push(CheckReport::boolean("qdybe", pr.qdybe_zero, None));
            report.push(CheckReport::boolean("semiclassical-limit", pr.limit_matches, Some("limit equals the input r-matrix".into())));
            report.notes.extend(pr.gauge_chain.iter().cloned());
            let meta = Metadata {
                partition: Some(x.to_string()),
                nu: Some(strings(&nu)),
                provenance: Some("quantize".into()),
                ..Metadata::default()
            };
            let doc = OperatorDocument::from_operator(&big_r, OperatorKind::QuantumR, Some(&RatExpr::g()), meta);
            if let Some(p) = &a.out {
                write_text(p, &to_json(&doc))?;
            }
            let text = finish_report(&report, &a.report, "quantize")?;
            let stdout = if a.out.is_some() { text } else { to_json(&doc) };
            Ok(Outcome { stdout, passed: report.status == Status::Pass })
        }
        Err(e) => {
            report.push(CheckReport::error("quantize", e.to_string()));
            let text = finish_report(&report, &a.report, "quantize")?;
            Ok(Outcome { stdout: text, passed: false })
        }
    }
}

fn classify(a: ClassifyArgs) -> Result<Outcome, CliError> {
    let (_, r) = load(&a.input)?;
    let res = classify_hecke_r(&r)?;
    let meta = Metadata {
        partition: Some(res.partition.to_string()),
        mu: Some((1..=r.dim()).map(|i| format_expr(res.canonical_mu.get(i))).collect()),
        provenance: Some("classify".into()),
        ..Metadata::default()
    };
    let canonical = OperatorDocument::from_operator(&res.canonical, OperatorKind::QuantumR, Some(&RatExpr::one()), meta);
    let doc = ClassificationDocument {
        schema_version: SCHEMA_VERSION,
        classes: res.classes.clone(),
        tau: res.tau.clone(),
        mu_pairs: res.mu_pairs.iter().map(|(&(i, j), v)| MuPair { i, j, value: format_expr(v) }).collect(),
        mu: res.mu.values().iter().map(format_expr).collect(),
        partition: res.partition.to_string(),
        standard_grading: res.is_standard(),
        phi: FormMatrix::from_mult_form(&res.phi),
        canonical,
    };
    emit(to_json(&doc), a.out.as_deref())
}
