//! Command-line frontend: evaluation, pole listing, tables and the
//! verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 numeric or
//! precondition error, 64 usage error.

pub mod complex;
pub mod records;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degamma::quadrature::{direct_integral_gamma, hankel_gamma, hankel_gamma_reflected, QuadratureSpec};
use degamma::representations::{
    degenerate_beta_product, euler_limit_gamma, weierstrass_gamma, ProductSpec,
};
use degamma::verify::{run_all, SuiteConfig};
use degamma::{
    degenerate_beta, degenerate_gamma, Complex64, DegenerateParameter, EvalResult, Status,
};

use complex::parse_complex;
use records::{finite, write_records, BetaRecord, Format, OutputRecord, PoleRecord, VerifyRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable holding the default relative tolerance.
pub const TOL_ENV: &str = "DEGAMMA_DEFAULT_TOL";
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "degamma", version, about = "Degenerate gamma and beta functions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the degenerate gamma function at one point.
    Eval(EvalArgs),
    /// List poles and residues.
    Poles(PolesArgs),
    /// Sweep over Re(s) or lambda.
    Table(TableArgs),
    /// Evaluate the degenerate beta function.
    Beta(BetaArgs),
    /// Run the identity and cross-path checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaMethod {
    ClosedForm,
    DirectIntegral,
    Hankel,
    HankelReflected,
    WeierstrassProduct,
    EulerLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BetaMethod {
    Ratio,
    ClassicalMixed,
    Product,
}

#[derive(Debug, Clone, Args)]
pub struct PathOptions {
    /// Relative tolerance for the integral paths (default from
    /// DEGAMMA_DEFAULT_TOL, else 1e-10); for the product paths it is an
    /// upper limit on the reported relative error.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Number of factors for the product paths.
    #[arg(long)]
    pub n_terms: Option<u64>,
    /// Add the leading tail term to the Weierstrass product.
    #[arg(long)]
    pub tail_correction: bool,
    /// Radius of the circle on the Hankel contour.
    #[arg(long)]
    pub hankel_radius: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub lambda: f64,
    /// Complex argument: a, bi, a+bi or a-bi.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s: Complex64,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub method: GammaMethod,
    #[command(flatten)]
    pub options: PathOptions,
}

#[derive(Debug, Args)]
pub struct PolesArgs {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 5)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Fixed lambda, or a range start:end:step.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Fixed complex s (with a lambda range).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, conflicts_with = "s_re")]
    pub s: Option<Complex64>,
    /// Range start:end:step of Re(s) (with a fixed lambda).
    #[arg(long, allow_hyphen_values = true)]
    pub s_re: Option<String>,
    /// Imaginary part used with --s-re.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub s_im: f64,
    #[arg(long, value_enum, default_value = "closed-form")]
    pub method: GammaMethod,
    #[command(flatten)]
    pub options: PathOptions,
}

#[derive(Debug, Args)]
pub struct BetaArgs {
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub alpha: Complex64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub beta: Complex64,
    #[arg(long, value_enum, default_value = "ratio")]
    pub method: BetaMethod,
    #[command(flatten)]
    pub options: PathOptions,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Where to write the full JSON report.
    #[arg(long)]
    pub report_path: Option<PathBuf>,
    /// Perturb the observed path of the named check by a factor 1 + 1e-6.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] degamma::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

/// Inclusive grid `start, start + step, …, end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, end, step] = parts.as_slice() else {
            return Err(format!("range '{text}' must be start:end:step"));
        };
        let num = |t: &str| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("invalid number '{t}' in range '{text}'"))
        };
        let grid = Self {
            start: num(start)?,
            end: num(end)?,
            step: num(step)?,
        };
        if !(grid.step > 0.0) || grid.end < grid.start {
            return Err(format!("range '{text}' needs step > 0 and end >= start"));
        }
        Ok(grid)
    }

    pub fn count(&self) -> usize {
        ((self.end - self.start) / self.step).round() as usize + 1
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count()).map(|i| self.start + i as f64 * self.step).collect()
    }
}

fn default_tol() -> Result<f64, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(text) => text
            .parse::<f64>()
            .ok()
            .filter(|v| *v > 0.0 && v.is_finite())
            .ok_or_else(|| CliError::Usage(format!("{TOL_ENV}='{text}' is not a positive number"))),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

struct PathConfig {
    quadrature: QuadratureSpec,
    product: ProductSpec,
}

fn path_config(options: &PathOptions) -> Result<PathConfig, CliError> {
    let mut quadrature = QuadratureSpec::with_tolerance(match options.tol {
        Some(t) => t,
        None => default_tol()?,
    });
    if let Some(r) = options.hankel_radius {
        quadrature.hankel_radius = r;
    }
    let mut product = ProductSpec::default();
    if let Some(n) = options.n_terms {
        product.n_terms = n;
    }
    product.use_tail_correction = options.tail_correction;
    product.tolerance = options.tol;
    Ok(PathConfig { quadrature, product })
}

fn parameter(lambda: f64) -> Result<DegenerateParameter, CliError> {
    DegenerateParameter::new(lambda).map_err(CliError::Numeric)
}

fn evaluate(s: Complex64, p: &DegenerateParameter, method: GammaMethod, cfg: &PathConfig) -> degamma::Result<EvalResult> {
    match method {
        GammaMethod::ClosedForm => Ok(degenerate_gamma(s, p)),
        GammaMethod::DirectIntegral => direct_integral_gamma(s, p, &cfg.quadrature),
        GammaMethod::Hankel => hankel_gamma(s, p, &cfg.quadrature),
        GammaMethod::HankelReflected => hankel_gamma_reflected(s, p, &cfg.quadrature),
        GammaMethod::WeierstrassProduct => weierstrass_gamma(s, p, &cfg.product),
        GammaMethod::EulerLimit => euler_limit_gamma(s, p, &cfg.product),
    }
}

fn method_name(method: GammaMethod) -> String {
    method
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

/// At a pole every path reports the pole with its residue.
fn evaluate_or_pole(s: Complex64, p: &DegenerateParameter, method: GammaMethod, cfg: &PathConfig) -> degamma::Result<EvalResult> {
    let reference = degenerate_gamma(s, p);
    if let Status::AtPole(_) = reference.status {
        return Ok(reference);
    }
    evaluate(s, p, method, cfg)
}

fn cmd_eval(args: &EvalArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = parameter(args.lambda)?;
    let cfg = path_config(&args.options)?;
    let r = evaluate_or_pole(args.s, &p, args.method, &cfg)?;
    write_records(out, format, &[OutputRecord::from_result(args.s, args.lambda, &r, true)])?;
    Ok(EXIT_OK)
}

fn cmd_poles(args: &PolesArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = parameter(args.lambda)?;
    let rows: Vec<_> = degamma::degenerate::poles(&p, args.n_max)
        .iter()
        .map(|info| PoleRecord::new(info, args.lambda))
        .collect();
    write_records(out, format, &rows)?;
    Ok(EXIT_OK)
}

fn cmd_table(args: &TableArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = path_config(&args.options)?;
    let cells: Vec<(Complex64, f64)> = match (&args.s, &args.s_re) {
        (Some(s), None) => Grid::parse(&args.lambda)
            .map_err(CliError::Usage)?
            .points()
            .into_iter()
            .map(|l| (*s, l))
            .collect(),
        (None, Some(range)) => {
            let lambda: f64 = args
                .lambda
                .parse()
                .map_err(|_| CliError::Usage(format!("--lambda '{}' must be a number when --s-re is a range", args.lambda)))?;
            Grid::parse(range)
                .map_err(CliError::Usage)?
                .points()
                .into_iter()
                .map(|x| (Complex64::new(x, args.s_im), lambda))
                .collect()
        }
        _ => {
            return Err(CliError::Usage(
                "give either --s with a --lambda range, or --s-re range with a fixed --lambda".into(),
            ))
        }
    };
    let mut rows = Vec::with_capacity(cells.len());
    for (s, lambda) in cells {
        let p = parameter(lambda)?;
        let row = match evaluate_or_pole(s, &p, args.method, &cfg) {
            Ok(r) => OutputRecord::from_result(s, lambda, &r, false),
            Err(_) => OutputRecord::skipped(s, lambda, &method_name(args.method)),
        };
        rows.push(row);
    }
    write_records(out, format, &rows)?;
    Ok(EXIT_OK)
}

fn cmd_beta(args: &BetaArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = parameter(args.lambda)?;
    let cfg = path_config(&args.options)?;
    let (a, b) = (args.alpha, args.beta);
    let r = match args.method {
        BetaMethod::Ratio => degenerate_beta(a, b, &p)?,
        BetaMethod::ClassicalMixed => degamma::degenerate::degenerate_beta_classical_mixed(a, b, &p)?,
        BetaMethod::Product => degenerate_beta_product(a, b, &p, &cfg.product)?,
    };
    let method = args
        .method
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    if let Some(note) = &r.note {
        eprintln!("degamma: note: {note}");
    }
    let row = BetaRecord {
        alpha_re: a.re,
        alpha_im: a.im,
        beta_re: b.re,
        beta_im: b.im,
        lambda: args.lambda,
        value_re: finite(r.value.re),
        value_im: finite(r.value.im),
        abs_error: finite(r.abs_error_estimate),
        method,
        status: r.status.label().to_string(),
    };
    write_records(out, format, &[row])?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = SuiteConfig {
        fault: args.inject_fault.clone(),
        ..SuiteConfig::new(args.seed, args.samples as usize)
    };
    let reports = run_all(&config);
    if let Some(path) = &args.report_path {
        let mut text = serde_json::to_string_pretty(&reports).map_err(std::io::Error::other)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    let rows: Vec<_> = reports
        .iter()
        .map(|r| VerifyRecord {
            check_name: r.check_name.clone(),
            passed: r.passed,
            sample_count: r.sample_count,
            max_rel_err: finite(r.max_rel_err),
            tolerance: r.tolerance,
            failures: r.failures.len(),
        })
        .collect();
    write_records(out, format, &rows)?;
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).map(|r| r.check_name.as_str()).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("degamma: failed checks: {}", failed.join(", "));
        Ok(EXIT_VERIFY_FAILED)
    }
}

/// Parses `args` and runs the command, writing records to `out` and
/// diagnostics to stderr. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.format, out),
        Command::Poles(a) => cmd_poles(a, cli.format, out),
        Command::Table(a) => cmd_table(a, cli.format, out),
        Command::Beta(a) => cmd_beta(a, cli.format, out),
        Command::Verify(a) => cmd_verify(a, cli.format, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("degamma: error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        assert_eq!(Grid::parse("0.1:2.9:0.1").unwrap().count(), 29);
        assert_eq!(Grid::parse("0.1:0.9:0.1").unwrap().count(), 9);
        assert_eq!(Grid::parse("-1:1:0.5").unwrap().count(), 5);
        assert!(Grid::parse("1:0:0.1").is_err());
        assert!(Grid::parse("0:1:0").is_err());
        assert!(Grid::parse("0:1").is_err());
    }
}
