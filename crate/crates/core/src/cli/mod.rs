//! Command-line front end: job files in, CSV/JSON tables out.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 domain or
//! admissibility error, 3 accuracy target not met. Failures print one JSON
//! line on standard error.

pub mod config;
pub mod output;
pub mod suites;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::context::EvalContext;
use crate::divisor::LabeledDivisor;
use crate::error::Error;
use crate::result::SuperzetaResult;
use crate::selberg::{
    even_nontrivial_ds0, even_nontrivial_superzeta, even_regularized_product, even_residue,
    kleinian_constants, odd_coefficients, odd_nontrivial_ds0, odd_nontrivial_superzeta,
    odd_regularized_product, KleinianParams, SelbergSpecEven, SelbergSpecOdd,
};
use crate::superzeta::{
    i_residue, i_residue_numeric, superzeta_continued_auto, superzeta_direct, superzeta_ds0,
    superzeta_integral_rep,
};
use crate::voros::{voros_superzeta, AsymptoticExpansion, HadamardData};
use crate::zeta_type::{f_value, FunctionModel};
use config::{JobConfig, Method, ParseError, Quantity};
use output::{render_report, render_rows, Format, Report, Row};

#[derive(Debug, Parser)]
#[command(
    name = "superzeta",
    version,
    about = "Superzeta functions and zeta-regularized determinants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Job file (JSON, or TOML by extension).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Overrides the job file's relative accuracy target.
    #[arg(long, value_name = "X")]
    pub target_rel_error: Option<f64>,
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Superzeta Z(s, z) of a function model or labelled divisor.
    EvalSuperzeta(Common),
    /// Regularized determinant D(z) = exp(-dZ/ds(0, z)).
    EvalDet(Common),
    /// Residues of the Mellin bracket at s = 1, 2, ... (s column = order).
    Residues(Common),
    /// Continuation through a full asymptotic expansion.
    Voros(Common),
    /// Non-trivial superzeta in odd dimension.
    SelbergOdd(Common),
    /// Non-trivial superzeta in even dimension.
    SelbergEven(Common),
    /// Determinant prefactors for Kleinian groups (three rows per s).
    Kleinian(Common),
    /// Built-in verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "NAME")]
        suite: String,
    },
}

/// Failure categories mapped onto exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Accuracy(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Accuracy(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Domain(_) => "domain",
            CliError::Accuracy(_) => "accuracy",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Accuracy(m) => m,
        }
    }

    /// Single-line JSON diagnostic.
    pub fn diagnostic(&self) -> String {
        #[derive(Serialize)]
        struct Diag<'a> {
            status: &'static str,
            kind: &'static str,
            code: i32,
            message: &'a str,
        }
        serde_json::to_string(&Diag {
            status: "error",
            kind: self.kind(),
            code: self.code(),
            message: self.message(),
        })
        .expect("diagnostic serializes")
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => CliError::Parse(e.to_string()),
            Error::QuadratureFailure { .. } => CliError::Accuracy(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn load(common: &Common) -> CliResult<JobConfig> {
    match &common.config {
        Some(path) => Ok(JobConfig::load(path)?),
        None => Err(CliError::Parse(
            "--config is required for this command".into(),
        )),
    }
}

fn context(job: Option<&JobConfig>, common: &Common) -> CliResult<EvalContext> {
    let mut ctx = match job {
        Some(job) => job.context()?,
        None => EvalContext::default(),
    };
    if let Some(t) = common.target_rel_error {
        ctx.target_rel_error = t;
    }
    ctx.validate()?;
    Ok(ctx)
}

fn model(job: &JobConfig) -> CliResult<FunctionModel> {
    let m: FunctionModel = job.model()?;
    Ok(m.with_default_zeros()?)
}

/// Evaluates `f` at every grid point, in parallel, keeping input order.
fn tabulate<F>(job: &JobConfig, f: F) -> CliResult<Vec<Row>>
where
    F: Fn(Complex64, Complex64) -> crate::error::Result<Row> + Sync,
{
    let pairs = job.grid()?.pairs();
    let rows: Vec<crate::error::Result<Row>> = pairs.par_iter().map(|&(s, z)| f(s, z)).collect();
    rows.into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

fn eval_superzeta(job: &JobConfig, ctx: &EvalContext) -> CliResult<Vec<Row>> {
    let method = job.method();
    if method == Method::Divisor {
        let divisor: LabeledDivisor = job.divisor()?;
        return tabulate(job, |s, z| {
            Ok(Row::from_result(s, z, divisor.superzeta(s, z, ctx)?))
        });
    }
    let model = model(job)?;
    tabulate(job, |s, z| {
        let r = match method {
            Method::Integral => superzeta_integral_rep(&model, s, z, ctx)?,
            Method::Continued => superzeta_continued_auto(&model, s, z, ctx)?,
            Method::Direct => direct(&model, s, z, ctx)?,
            _ if model.is_zeta_type() => superzeta_continued_auto(&model, s, z, ctx)?,
            _ => direct(&model, s, z, ctx)?,
        };
        Ok(Row::from_result(s, z, r))
    })
}

fn direct(
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> crate::error::Result<SuperzetaResult> {
    match &model.zeros {
        Some(zeros) => superzeta_direct(zeros, s, z, ctx),
        None => Err(Error::NoClosedForm(
            "direct summation needs the model's zeros".into(),
        )),
    }
}

fn eval_det(job: &JobConfig, ctx: &EvalContext) -> CliResult<Vec<Row>> {
    let model = model(job)?;
    tabulate(job, |s, z| {
        let d = superzeta_ds0(&model, z, ctx)?;
        let value = (-d.value).exp();
        let r = SuperzetaResult::new(value, value.norm() * d.est_error).with_flags(d.branch_flags);
        Ok(Row::from_result(s, z, r).labelled("determinant"))
    })
}

fn order_of(s: Complex64) -> crate::error::Result<usize> {
    if s.im != 0.0 || s.re < 1.0 || s.re.fract() != 0.0 {
        return Err(Error::IndexRange(format!(
            "residue order must be a positive integer, got s = {s}"
        )));
    }
    Ok(s.re as usize)
}

/// Contour value with the distance to the closed formula as its error.
fn residues(job: &JobConfig, ctx: &EvalContext) -> CliResult<Vec<Row>> {
    let model = model(job)?;
    tabulate(job, |s, z| {
        let n = order_of(s)?;
        let numeric = i_residue_numeric(&model, n, z, ctx)?;
        let exact = i_residue(&model, n, z, ctx)?;
        let r = SuperzetaResult::new(numeric, (numeric - exact).norm());
        Ok(Row::from_result(s, z, r).labelled("residue"))
    })
}

fn voros(job: &JobConfig, ctx: &EvalContext) -> CliResult<Vec<Row>> {
    let exp: AsymptoticExpansion = job.expansion()?;
    let data: HadamardData = job.hadamard()?;
    let k0 = job.k0();
    tabulate(job, |s, z| {
        Ok(Row::from_result(
            s,
            z,
            voros_superzeta(&exp, &data, s, z, k0, ctx)?,
        ))
    })
}

/// Product row: closed right-hand side, error = distance to the numerical
/// `exp(-dZ/ds(0))`.
fn product_row(
    s: Complex64,
    z: Complex64,
    rhs: Complex64,
    ds0: crate::calculus::Derivative,
) -> Row {
    let lhs = (-ds0.value).exp();
    let est = (rhs - lhs).norm() + lhs.norm() * ds0.error;
    Row::from_result(s, z, SuperzetaResult::new(rhs, est)).labelled("product")
}

fn selberg_odd(job: &JobConfig, ctx: &EvalContext) -> CliResult<Vec<Row>> {
    let spec: SelbergSpecOdd = job.spec()?;
    let model = model(job)?;
    match job.quantity() {
        Quantity::Superzeta => tabulate(job, |s, z| {
            Ok(Row::from_result(
                s,
                z,
                odd_nontrivial_superzeta(&spec, &model, s, z, ctx)?,
            ))
        }),
        Quantity::Product => tabulate(job, |s, z| {
            let rhs = odd_regularized_product(&spec, f_value(&model, z, ctx)?, z)?;
            Ok(product_row(
                s,
                z,
                rhs,
                odd_nontrivial_ds0(&spec, &model, z, ctx)?,
            ))
        }),
        Quantity::Residue => tabulate(job, |s, z| {
            if order_of(s)? != 1 {
                return Err(Error::IndexRange(
                    "the odd superzeta has its only pole at s = 1".into(),
                ));
            }
            let beta = odd_coefficients(&spec).1;
            let r = SuperzetaResult::closed_form(Complex64::new(beta, 0.0));
            Ok(Row::from_result(s, z, r).labelled("residue"))
        }),
    }
}

fn selberg_even(job: &JobConfig, ctx: &EvalContext) -> CliResult<Vec<Row>> {
    let spec: SelbergSpecEven = job.spec()?;
    let model = model(job)?;
    match job.quantity() {
        Quantity::Superzeta => tabulate(job, |s, z| {
            Ok(Row::from_result(
                s,
                z,
                even_nontrivial_superzeta(&spec, &model, s, z, ctx)?,
            ))
        }),
        Quantity::Product => tabulate(job, |s, z| {
            let rhs = even_regularized_product(&spec, f_value(&model, z, ctx)?, z, ctx)?;
            Ok(product_row(
                s,
                z,
                rhs,
                even_nontrivial_ds0(&spec, &model, z, ctx)?,
            ))
        }),
        Quantity::Residue => tabulate(job, |s, z| {
            let r = SuperzetaResult::closed_form(even_residue(&spec, order_of(s)?, z)?);
            Ok(Row::from_result(s, z, r).labelled("residue"))
        }),
    }
}

fn kleinian(job: &JobConfig) -> CliResult<Vec<Row>> {
    let params: KleinianParams = job.kleinian()?;
    let pairs = job.grid()?.pairs();
    let mut rows = Vec::with_capacity(3 * pairs.len());
    for (s, z) in pairs {
        let k = kleinian_constants(&params, s)?;
        for (label, v) in [
            ("det_prefactor_plus", k.det_prefactor_plus),
            ("det_prefactor_minus", k.det_prefactor_minus),
            ("phi_quotient_prefactor", k.phi_quotient_prefactor),
        ] {
            rows.push(Row::from_result(s, z, SuperzetaResult::closed_form(v)).labelled(label));
        }
    }
    Ok(rows)
}

fn check_rows(rows: &[Row], ctx: &EvalContext) -> CliResult<()> {
    for r in rows {
        let allowed = ctx.target_rel_error * r.value.norm().max(1.0);
        if !(r.est_error <= allowed) {
            return Err(CliError::Accuracy(format!(
                "s = {}, z = {}: estimated error {:e} exceeds {:e}",
                r.s, r.z, r.est_error, allowed
            )));
        }
    }
    Ok(())
}

fn emit(common: &Common, text: &str) -> CliResult<()> {
    match &common.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_inner(cli: &Cli) -> CliResult<()> {
    let common = match &cli.command {
        Command::EvalSuperzeta(c)
        | Command::EvalDet(c)
        | Command::Residues(c)
        | Command::Voros(c)
        | Command::SelbergOdd(c)
        | Command::SelbergEven(c)
        | Command::Kleinian(c) => c,
        Command::Verify { common, .. } => common,
    };
    if let Command::Verify { suite, .. } = &cli.command {
        let job = common.config.as_ref().map(|_| load(common)).transpose()?;
        let ctx = context(job.as_ref(), common)?;
        let checks = suites::run_suite(suite, &ctx).ok_or_else(|| {
            CliError::Parse(format!(
                "unknown suite `{suite}`; expected one of {}",
                suites::SUITES.join(", ")
            ))
        })??;
        let report = Report::new(suite, checks);
        emit(common, &render_report(&report, common.format))?;
        if !report.passed {
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            return Err(CliError::Accuracy(format!(
                "suite {suite} failed: {}",
                failed.join("; ")
            )));
        }
        return Ok(());
    }

    let job = load(common)?;
    let ctx = context(Some(&job), common)?;
    let rows = match &cli.command {
        Command::EvalSuperzeta(_) => eval_superzeta(&job, &ctx)?,
        Command::EvalDet(_) => eval_det(&job, &ctx)?,
        Command::Residues(_) => residues(&job, &ctx)?,
        Command::Voros(_) => voros(&job, &ctx)?,
        Command::SelbergOdd(_) => selberg_odd(&job, &ctx)?,
        Command::SelbergEven(_) => selberg_even(&job, &ctx)?,
        Command::Kleinian(_) => kleinian(&job)?,
        Command::Verify { .. } => unreachable!("handled above"),
    };
    emit(common, &render_rows(&rows, common.format))?;
    check_rows(&rows, &ctx)
}

fn thread_count(cli: &Cli) -> Option<usize> {
    match &cli.command {
        Command::EvalSuperzeta(c)
        | Command::EvalDet(c)
        | Command::Residues(c)
        | Command::Voros(c)
        | Command::SelbergOdd(c)
        | Command::SelbergEven(c)
        | Command::Kleinian(c)
        | Command::Verify { common: c, .. } => c.threads,
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let pool = match thread_count(cli) {
        Some(0) => Err(CliError::Parse("--threads must be at least 1".into())),
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n.unwrap_or(0))
            .build()
            .map_err(|e| CliError::Parse(e.to_string())),
    };
    let outcome = pool.and_then(|pool| pool.install(|| run_inner(cli)));
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            e.code()
        }
    }
}

/// Entry point for the binary: parse errors exit with code 1.
pub fn main_from_env() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = CliError::Parse(e.kind().to_string());
            eprint!("{e}");
            eprintln!("{}", err.diagnostic());
            err.code()
        }
    }
}
