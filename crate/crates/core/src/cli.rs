//! Command-line front end: `eval`, `grid`, `verify`, `info`.
//!
//! Exit codes: 0 ok, 1 suite failure, 2 usage, 3 numerical domain, 4 io.
//! Errors are reported on stderr as one JSON object `{error, message}`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{sector_phase, unit_ball_volume, KernelConfig, RealVector, RotatedPoint};
use crate::error::Error;
use crate::kernels::{
    bergman, bergman_series, poisson, poisson_series, regime, truncation_degree_with,
    weighted_bergman_series, SeriesWeight, Truncation,
};
use crate::par::Execution;
use crate::quadrature::cache::CACHE_DIR_ENV;
use crate::verify::{run_suite, SuiteOptions, SuiteReport, SUITES};
use crate::zonal::{calibrated_growth_constant, zonal_polyharmonic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "polybergman",
    version,
    about = "Polyharmonic Poisson and Bergman kernels on rotated balls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one kernel at a pair of points.
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        points: PointArgs,
        /// Evaluation route for poisson/bergman.
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Degree m of the zonal kernel Z^p_m.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Tabulate a kernel on a polar grid of x in the (e1, e2)-plane.
    Grid {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long)]
        degree: Option<usize>,
        /// Number of radii `r_i = R·(i+1)/steps`.
        #[arg(long, default_value_t = 10)]
        radial_steps: usize,
        /// Number of angles `θ_j = 2πj/steps`.
        #[arg(long, default_value_t = 10)]
        angular_steps: usize,
        /// Outer grid radius R.
        #[arg(long, default_value_t = 0.99)]
        grid_radius: f64,
    },
    /// Run a verification suite (or `all`) and print its JSON report.
    Verify {
        /// Suite name, or `all`.
        suite: String,
        #[command(flatten)]
        common: CommonArgs,
        /// Random point pairs per (n, p) for the kernel suites.
        #[arg(long)]
        pairs: Option<usize>,
        /// Random polynomials per configuration for the cubature suites.
        #[arg(long)]
        polynomials: Option<usize>,
        /// Run all cases on the calling thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Print the resolved configuration and derived constants.
    Info {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    Poisson,
    Bergman,
    Wbergman,
    Zonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Series,
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    #[arg(long, value_enum)]
    kernel: Option<KernelKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Tail tolerance for series truncation.
    #[arg(long)]
    tol: Option<f64>,
    /// Fixed series truncation degree (overrides --tol).
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON file with defaults for any of the above.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    r_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
struct PointArgs {
    /// Real part a of x = e^{iφ}a, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    x_phase: Option<f64>,
    /// Phase as a sector index k (φ = kπ/p).
    #[arg(long, conflicts_with = "x_phase")]
    x_sector: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    y_phase: Option<f64>,
    #[arg(long, conflicts_with = "y_phase")]
    y_sector: Option<usize>,
}

/// Resolved configuration: flags over `--config` file over defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub kernel: KernelKind,
    pub n: usize,
    pub p: usize,
    pub alpha: f64,
    pub beta: f64,
    pub tol: f64,
    pub max_degree: Option<usize>,
    pub seed: u64,
    /// `json` for eval, `csv` for grid when unset.
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub r_max: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kernel: KernelKind::Bergman,
            n: 3,
            p: 2,
            alpha: 0.0,
            beta: 0.0,
            tol: 1e-10,
            max_degree: None,
            seed: 42,
            format: None,
            output: None,
            r_max: KernelConfig::DEFAULT_R_MAX,
        }
    }
}

impl RunConfig {
    pub fn kernel_config(&self) -> Result<KernelConfig, Error> {
        KernelConfig::new(self.n, self.p)?
            .with_weights(self.alpha, self.beta)?
            .with_r_max(self.r_max)
    }
}

/// CLI failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    error: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            e if e.is_numeric_domain() => EXIT_NUMERIC,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            error: e.code().into(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: "usage".into(),
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        error: "io".into(),
        message: format!("{}: {e}", path.display()),
    }
}

fn resolve(common: &CommonArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| usage(format!("config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    macro_rules! take {
        ($($field:ident),*) => {$(if let Some(v) = common.$field.clone() { cfg.$field = v; })*};
    }
    take!(kernel, n, p, alpha, beta, tol, seed, r_max);
    if common.max_degree.is_some() {
        cfg.max_degree = common.max_degree;
    }
    if common.format.is_some() {
        cfg.format = common.format;
    }
    if common.output.is_some() {
        cfg.output = common.output.clone();
    }
    if !(cfg.tol > 0.0) {
        return Err(usage(format!("tol = {} must be > 0", cfg.tol)));
    }
    Ok(cfg)
}

fn parse_coords(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| usage(format!("bad coordinate '{s}': {e}")))
        })
        .collect()
}

fn point(
    cfg: &RunConfig,
    coords: Option<&str>,
    phase: Option<f64>,
    sector: Option<usize>,
) -> Result<RotatedPoint, Failure> {
    let a = match coords {
        Some(text) => parse_coords(text)?,
        None => vec![0.0; cfg.n],
    };
    if a.len() != cfg.n {
        return Err(Error::DimensionMismatch {
            expected: cfg.n,
            got: a.len(),
        }
        .into());
    }
    let phi = match (phase, sector) {
        (Some(phi), _) => phi,
        (None, Some(k)) => sector_phase(k, cfg.p),
        (None, None) => 0.0,
    };
    Ok(RotatedPoint::new(phi, RealVector::new(a)?)?)
}

/// Value of the configured kernel plus the truncation degree when a series was summed.
fn evaluate_kernel(
    run: &RunConfig,
    kcfg: &KernelConfig,
    method: Method,
    degree: Option<usize>,
    calibrated_c: &mut Option<f64>,
    x: &RotatedPoint,
    y: &RotatedPoint,
) -> Result<(Complex64, Option<Truncation>), Error> {
    let mut truncation = |weight: SeriesWeight| -> Result<Truncation, Error> {
        if let Some(m) = run.max_degree {
            return Ok(Truncation::fixed(m));
        }
        let c = match calibrated_c {
            Some(c) => *c,
            None => *calibrated_c.insert(calibrated_growth_constant(kcfg)?),
        };
        let r = x.radius() * y.radius();
        Ok(Truncation {
            max_degree: truncation_degree_with(kcfg, r, run.tol, weight, c)?,
            tol: run.tol,
            calibrated_c: c,
        })
    };
    Ok(match (run.kernel, method) {
        (KernelKind::Poisson, Method::Closed) => (poisson(kcfg, x, y)?, None),
        (KernelKind::Bergman, Method::Closed) => (bergman(kcfg, x, y)?, None),
        (KernelKind::Poisson, Method::Series) => {
            let t = truncation(SeriesWeight::Poisson)?;
            (poisson_series(kcfg, x, y, &t)?, Some(t))
        }
        (KernelKind::Bergman, Method::Series) => {
            let t = truncation(SeriesWeight::Bergman)?;
            (bergman_series(kcfg, x, y, &t)?, Some(t))
        }
        (KernelKind::Wbergman, _) => {
            let t = truncation(SeriesWeight::Weighted)?;
            (weighted_bergman_series(kcfg, x, y, &t)?, Some(t))
        }
        (KernelKind::Zonal, _) => {
            let m = degree
                .or(run.max_degree)
                .ok_or_else(|| Error::InvalidParameter("zonal kernel needs --degree".into()))?;
            (zonal_polyharmonic(kcfg, m, x, y)?, None)
        }
    })
}

fn kernel_name(k: KernelKind) -> &'static str {
    match k {
        KernelKind::Poisson => "poisson",
        KernelKind::Bergman => "bergman",
        KernelKind::Wbergman => "wbergman",
        KernelKind::Zonal => "zonal",
    }
}

fn csv_header(n: usize) -> String {
    let mut h = String::from("n,p,alpha,beta,phase_x,phase_y");
    for prefix in ["ax", "ay"] {
        for i in 1..=n {
            let _ = write!(h, ",{prefix}{i}");
        }
    }
    h.push_str(",re,im,regime\n");
    h
}

fn csv_row(
    run: &RunConfig,
    x: &RotatedPoint,
    y: &RotatedPoint,
    value: Complex64,
    regime: &str,
) -> String {
    let mut row = format!(
        "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
        run.n, run.p, run.alpha, run.beta, x.phase, y.phase
    );
    for c in x.coords.0.iter().chain(&y.coords.0) {
        let _ = write!(row, ",{c:.16e}");
    }
    let _ = writeln!(row, ",{:.16e},{:.16e},{regime}", value.re, value.im);
    row
}

/// JSON numbers cannot carry NaN; failed rows report `null`.
fn json_number(v: f64) -> serde_json::Value {
    if v.is_finite() {
        json!(v)
    } else {
        serde_json::Value::Null
    }
}

fn point_json(x: &RotatedPoint) -> serde_json::Value {
    json!({"phase": x.phase, "coords": x.coords.0})
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

fn cmd_eval(
    common: &CommonArgs,
    points: &PointArgs,
    method: Method,
    degree: Option<usize>,
) -> Result<i32, Failure> {
    let run = resolve(common)?;
    let kcfg = run.kernel_config()?;
    let x = point(&run, points.x.as_deref(), points.x_phase, points.x_sector)?;
    let y = point(&run, points.y.as_deref(), points.y_phase, points.y_sector)?;
    let mut c = None;
    let (value, trunc) = evaluate_kernel(&run, &kcfg, method, degree, &mut c, &x, &y)?;
    let reg = regime(&kcfg, &x, &y).as_str();
    let text = match run.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Csv => csv_header(run.n) + &csv_row(&run, &x, &y, value, reg),
        OutputFormat::Json => {
            let record = json!({
                "kernel": kernel_name(run.kernel),
                "n": run.n,
                "p": run.p,
                "alpha": run.alpha,
                "beta": run.beta,
                "x": point_json(&x),
                "y": point_json(&y),
                "re": value.re,
                "im": value.im,
                "truncation": trunc.map(|t| json!({
                    "max_degree": t.max_degree,
                    "tol": json_number(t.tol),
                })),
                "regime": reg,
            });
            serde_json::to_string_pretty(&record).map_err(Error::from)? + "\n"
        }
    };
    emit(run.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_grid(
    common: &CommonArgs,
    points: &PointArgs,
    method: Method,
    degree: Option<usize>,
    radial_steps: usize,
    angular_steps: usize,
    grid_radius: f64,
) -> Result<i32, Failure> {
    let run = resolve(common)?;
    let format = run.format.unwrap_or(OutputFormat::Csv);
    if radial_steps == 0 || angular_steps == 0 {
        return Err(usage("grid step counts must be positive"));
    }
    if !(grid_radius > 0.0 && grid_radius < 1.0) {
        return Err(usage(format!(
            "grid radius {grid_radius} must lie in (0, 1)"
        )));
    }
    let kcfg = run.kernel_config()?;
    let x_phase = match (points.x_phase, points.x_sector) {
        (Some(phi), _) => phi,
        (None, Some(k)) => sector_phase(k, run.p),
        (None, None) => 0.0,
    };
    // y defaults to the grid point itself (the diagonal)
    let fixed_y = match &points.y {
        Some(_) => Some(point(
            &run,
            points.y.as_deref(),
            points.y_phase,
            points.y_sector,
        )?),
        None => None,
    };
    let mut c = None;
    let mut csv = csv_header(run.n);
    let mut records = Vec::new();
    for i in 0..radial_steps {
        let r = grid_radius * (i + 1) as f64 / radial_steps as f64;
        for j in 0..angular_steps {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / angular_steps as f64;
            let mut a = vec![0.0; run.n];
            a[0] = r * theta.cos();
            a[1] = r * theta.sin();
            let x = RotatedPoint::new(x_phase, RealVector::new(a)?)?;
            let y = match &fixed_y {
                Some(y) => y.clone(),
                None => {
                    let phi = match (points.y_phase, points.y_sector) {
                        (Some(phi), _) => phi,
                        (None, Some(k)) => sector_phase(k, run.p),
                        (None, None) => x_phase,
                    };
                    RotatedPoint::new(phi, x.coords.clone())?
                }
            };
            let (value, reg) = match evaluate_kernel(&run, &kcfg, method, degree, &mut c, &x, &y) {
                Ok((v, _)) => (v, regime(&kcfg, &x, &y).as_str()),
                // numerical-domain failures stay in the table as NaN rows
                Err(e) if e.is_numeric_domain() => (Complex64::new(f64::NAN, f64::NAN), e.code()),
                Err(e) => return Err(e.into()),
            };
            match format {
                OutputFormat::Csv => csv.push_str(&csv_row(&run, &x, &y, value, reg)),
                OutputFormat::Json => records.push(json!({
                    "n": run.n,
                    "p": run.p,
                    "alpha": run.alpha,
                    "beta": run.beta,
                    "x": point_json(&x),
                    "y": point_json(&y),
                    "re": json_number(value.re),
                    "im": json_number(value.im),
                    "regime": reg,
                })),
            }
        }
    }
    let text = match format {
        OutputFormat::Csv => csv,
        OutputFormat::Json => serde_json::to_string_pretty(&records).map_err(Error::from)? + "\n",
    };
    emit(run.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    suite: &str,
    common: &CommonArgs,
    pairs: Option<usize>,
    polynomials: Option<usize>,
    sequential: bool,
) -> Result<i32, Failure> {
    let run = resolve(common)?;
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(usage(format!(
            "unknown suite '{suite}'; known: all, {}",
            SUITES.join(", ")
        )));
    };
    let defaults = SuiteOptions::default();
    let opts = SuiteOptions {
        n: common.n,
        p: common.p,
        seed: run.seed,
        pairs: pairs.unwrap_or(defaults.pairs),
        polynomials: polynomials.unwrap_or(defaults.polynomials),
        exec: if sequential {
            Execution::Sequential
        } else {
            defaults.exec
        },
        ..defaults
    };
    let reports = names
        .iter()
        .map(|name| run_suite(name, &opts))
        .collect::<Result<Vec<SuiteReport>, Error>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .map_err(Error::from)?
        + "\n";
    emit(run.output.as_deref(), &text)?;
    Ok(if pass { EXIT_OK } else { EXIT_SUITE_FAIL })
}

fn cmd_info(common: &CommonArgs) -> Result<i32, Failure> {
    let run = resolve(common)?;
    let kcfg = run.kernel_config()?;
    let omega = unit_ball_volume(run.n)?;
    let c = calibrated_growth_constant(&kcfg)?;
    let weight = match run.kernel {
        KernelKind::Poisson | KernelKind::Zonal => SeriesWeight::Poisson,
        KernelKind::Bergman => SeriesWeight::Bergman,
        KernelKind::Wbergman => SeriesWeight::Weighted,
    };
    let at_r_max = truncation_degree_with(&kcfg, kcfg.r_max, run.tol, weight, c).ok();
    let info = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": run,
        "unit_ball_volume": omega,
        "bergman_normalization": run.n as f64 * omega,
        "growth_constant": c,
        "truncation_degree_at_r_max": at_r_max,
        "suites": SUITES,
        "parallel": cfg!(feature = "parallel"),
        "cache_dir": std::env::var(CACHE_DIR_ENV).ok(),
    });
    let text = serde_json::to_string_pretty(&info).map_err(Error::from)? + "\n";
    emit(run.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            report(&usage(e.to_string().trim_end()));
            return EXIT_USAGE;
        }
    };
    let result = match &cli.command {
        Command::Eval {
            common,
            points,
            method,
            degree,
        } => cmd_eval(common, points, *method, *degree),
        Command::Grid {
            common,
            points,
            method,
            degree,
            radial_steps,
            angular_steps,
            grid_radius,
        } => cmd_grid(
            common,
            points,
            *method,
            *degree,
            *radial_steps,
            *angular_steps,
            *grid_radius,
        ),
        Command::Verify {
            suite,
            common,
            pairs,
            polynomials,
            sequential,
        } => cmd_verify(suite, common, *pairs, *polynomials, *sequential),
        Command::Info { common } => cmd_info(common),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            report(&f);
            f.code
        }
    }
}

fn report(f: &Failure) {
    let body = json!({"error": f.error, "message": f.message});
    let _ = writeln!(std::io::stderr().lock(), "{body}");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        assert_eq!(
            csv_header(2),
            "n,p,alpha,beta,phase_x,phase_y,ax1,ax2,ay1,ay2,re,im,regime\n"
        );
    }

    #[test]
    fn defaults() {
        let d = RunConfig::default();
        assert_eq!(
            (d.n, d.p, d.alpha, d.beta, d.tol, d.seed, d.r_max),
            (3, 2, 0.0, 0.0, 1e-10, 42, 0.95)
        );
    }

    #[test]
    fn config_file_partial() {
        let cfg: RunConfig = serde_json::from_str(r#"{"n": 4, "kernel": "poisson"}"#).unwrap();
        assert_eq!(cfg.n, 4);
        assert_eq!(cfg.kernel, KernelKind::Poisson);
        assert_eq!(cfg.p, 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["polybergman", "eval", "--n", "1"]), EXIT_USAGE);
        assert_eq!(run(["polybergman", "frobnicate"]), EXIT_USAGE);
        assert_eq!(
            run([
                "polybergman",
                "eval",
                "--kernel",
                "poisson",
                "--p",
                "1",
                "--x",
                "1,0,0",
                "--y",
                "1,0,0",
                "--output",
                "/dev/null"
            ]),
            EXIT_NUMERIC
        );
    }
}
