//! Deterministic tables for the `multigamma` library.
//!
//! Every command produces rows `{command, n, nu, value, abs_error, route}` in
//! ascending `n`, then ascending `nu`. Numbers are written with 17
//! significant digits, which round-trips every `f64`.

mod output;
mod selftest;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use multigamma::barnes::{log_barnes_gamma_est, BarnesPoint};
use multigamma::spectral::{
    anomaly_integrated, bar_schopka_scan, boundary_log_det, bulk_log_det_ratio, dimreg_continuation,
    dirac_det_log, f_coefficient, type_a_coefficient, EvalResult, Route, SpectralConfig,
};
use multigamma::{Error, PrecisionContext};

pub use output::{write_records, FORMAT_VERSION};
pub use selftest::{run_selftest, Fault, SelftestReport, SCAN_REGRESSION_THRESHOLD};

/// Environment variable read for the default `--precision`.
pub const PRECISION_ENV: &str = "MULTIGAMMA_PRECISION";

/// Loosest target accepted by `selftest`; other commands stop at
/// [`PrecisionContext::MAX_TARGET`].
pub const SELFTEST_MAX_PRECISION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Barnes,
    Det,
    Anomaly,
    Fcoef,
    Dimreg,
    Scan,
    Selftest,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Barnes => "barnes",
            Command::Det => "det",
            Command::Anomaly => "anomaly",
            Command::Fcoef => "fcoef",
            Command::Dimreg => "dimreg",
            Command::Scan => "scan",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
    Pretty,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" | "json-lines" => Ok(Format::JsonLines),
            "pretty" => Ok(Format::Pretty),
            other => Err(format!("unknown format `{other}` (csv, jsonl, pretty)")),
        }
    }
}

/// A single dimension `N` or an inclusive range `A..B` (also `A..=B`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimSpec {
    pub first: u32,
    pub last: u32,
}

impl DimSpec {
    pub fn single(n: u32) -> Self {
        DimSpec { first: n, last: n }
    }

    pub fn values(&self) -> impl Iterator<Item = u32> {
        self.first..=self.last
    }
}

impl FromStr for DimSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("invalid dimension `{t}`"))
        };
        let (first, last) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if first == 0 {
            return Err("dimensions start at 1".into());
        }
        if first > last {
            return Err(format!("empty dimension range `{s}`"));
        }
        Ok(DimSpec { first, last })
    }
}

/// A single value or an inclusive linear grid `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn single(x: f64) -> Self {
        GridSpec { start: x, stop: x, count: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("invalid number `{t}`"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [x] => Ok(GridSpec::single(num(x)?)),
            [a, b, c] => {
                let count: usize = c.trim().parse().map_err(|_| format!("invalid grid count `{c}`"))?;
                if count == 0 {
                    return Err("grid count must be >= 1".into());
                }
                let (start, stop) = (num(a)?, num(b)?);
                if count > 1 && start >= stop {
                    return Err(format!("grid `{s}` must have start < stop"));
                }
                if count == 1 && start != stop {
                    return Err(format!("grid `{s}` with one point must have start = stop"));
                }
                Ok(GridSpec { start, stop, count })
            }
            _ => Err(format!("grid `{s}` is neither a number nor start:stop:count")),
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<DimSpec>,
    /// `ν` for spectral commands, `z` for `barnes`.
    pub nu: Option<GridSpec>,
    pub precision: f64,
    pub format: Format,
    pub fault: Option<Fault>,
}

impl RunConfig {
    /// Checks the argument combination each command needs.
    pub fn new(
        command: Command,
        n: Option<DimSpec>,
        nu: Option<GridSpec>,
        precision: Option<f64>,
        format: Format,
        fault: Option<Fault>,
    ) -> Result<Self, CliError> {
        let precision = precision.unwrap_or(PrecisionContext::DEFAULT_TARGET);
        let max = if command == Command::Selftest { SELFTEST_MAX_PRECISION } else { PrecisionContext::MAX_TARGET };
        if !(precision > 0.0 && precision <= max) {
            return Err(CliError::Usage(format!("precision {precision:e} outside (0, {max:e}]")));
        }
        let needs_n = !matches!(command, Command::Selftest);
        if needs_n && n.is_none() {
            return Err(CliError::Usage(format!("`{}` needs --n", command.as_str())));
        }
        let needs_nu = matches!(command, Command::Barnes | Command::Dimreg);
        if needs_nu && nu.is_none() {
            let flag = if command == Command::Barnes { "--z" } else { "--nu" };
            return Err(CliError::Usage(format!("`{}` needs {flag}", command.as_str())));
        }
        let takes_nu = matches!(command, Command::Barnes | Command::Det | Command::Anomaly | Command::Dimreg);
        if !takes_nu && nu.is_some() {
            return Err(CliError::Usage(format!("`{}` takes no --nu", command.as_str())));
        }
        if command == Command::Scan {
            if let Some(d) = n {
                if d.first != d.last || d.first < 3 {
                    return Err(CliError::Usage("scan needs a single --n-max >= 3".into()));
                }
            }
        }
        if fault.is_some() && command != Command::Selftest {
            return Err(CliError::Usage("fault injection only applies to selftest".into()));
        }
        Ok(RunConfig { command, n, nu, precision, format, fault })
    }

    /// Context for the computation; `selftest` clamps its target into the
    /// window the evaluators accept and relaxes its checks instead.
    pub fn context(&self) -> PrecisionContext {
        PrecisionContext::with_target(self.precision.min(PrecisionContext::MAX_TARGET))
            .expect("precision validated on construction")
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub command: &'static str,
    pub n: u32,
    pub nu: Option<f64>,
    pub value: f64,
    pub abs_error: f64,
    pub route: &'static str,
}

impl Record {
    fn from_eval(command: &'static str, n: u32, nu: Option<f64>, r: EvalResult) -> Record {
        Record { command, n, nu, value: r.value, abs_error: r.abs_error_estimate, route: r.route.as_str() }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
    Selftest(String),
    Io(std::io::Error),
}

impl CliError {
    /// 2 for invalid arguments, 3 for numerical failures, 1 for a failed
    /// self-test or an output error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Compute(Error::Domain { .. }) => 2,
            CliError::Compute(_) => 3,
            CliError::Selftest(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Selftest(m) => write!(f, "selftest failed: {m}"),
            CliError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Evaluates the rows of a non-selftest command, in output order.
pub fn compute_records(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    let ctx = cfg.context();
    let dims: Vec<u32> = cfg.n.map(|d| d.values().collect()).unwrap_or_default();
    let grid = cfg.nu.map(|g| g.values());
    let mut rows = Vec::new();
    match cfg.command {
        Command::Barnes => {
            for &n in &dims {
                for &z in grid.as_deref().unwrap_or_default() {
                    let e = log_barnes_gamma_est(&BarnesPoint::new(n, z)?, &ctx)?;
                    let r = EvalResult { value: e.to_f64(), abs_error_estimate: e.abs_error, route: Route::ClosedForm };
                    rows.push(Record::from_eval("barnes", n, Some(z), r));
                }
            }
        }
        Command::Det => {
            for &n in &dims {
                match &grid {
                    None => {
                        let r = dirac_det_log(n, &ctx)?;
                        let det = (-r.value).exp();
                        rows.push(Record {
                            command: "det",
                            n,
                            nu: None,
                            value: det,
                            abs_error: det * r.abs_error_estimate,
                            route: r.route.as_str(),
                        });
                    }
                    Some(g) => {
                        for &nu in g {
                            let c = SpectralConfig::new(n, nu)?;
                            rows.push(Record::from_eval("det.boundary", n, Some(nu), boundary_log_det(&c, &ctx)?));
                            rows.push(Record::from_eval("det.bulk", n, Some(nu), bulk_log_det_ratio(&c, &ctx)?));
                        }
                    }
                }
            }
        }
        Command::Anomaly => {
            for &n in &dims {
                match &grid {
                    None => rows.push(Record::from_eval("anomaly.type-a", n, None, type_a_coefficient(n, &ctx)?)),
                    Some(g) => {
                        for &nu in g {
                            rows.push(Record::from_eval("anomaly", n, Some(nu), anomaly_integrated(n, nu, &ctx)?));
                        }
                    }
                }
            }
        }
        Command::Fcoef => {
            for &n in &dims {
                rows.push(Record::from_eval("fcoef", n, None, f_coefficient(n, &ctx)?));
            }
        }
        Command::Dimreg => {
            for &n in &dims {
                for &nu in grid.as_deref().unwrap_or_default() {
                    let r = dimreg_continuation(n, nu, &ctx)?;
                    let route = Route::ModeSumContinuation.as_str();
                    rows.push(Record {
                        command: "dimreg.residue",
                        n,
                        nu: Some(nu),
                        value: r.residue,
                        abs_error: r.residue_error,
                        route,
                    });
                    rows.push(Record {
                        command: "dimreg.finite",
                        n,
                        nu: Some(nu),
                        value: r.finite_part,
                        abs_error: r.finite_error,
                        route,
                    });
                }
            }
        }
        Command::Scan => {
            let report = bar_schopka_scan(dims[0], &ctx)?;
            for e in &report.entries {
                rows.push(Record {
                    command: "scan",
                    n: e.n,
                    nu: None,
                    value: e.det,
                    abs_error: e.det * e.abs_error,
                    route: Route::ClosedForm.as_str(),
                });
            }
        }
        Command::Selftest => {
            return Err(CliError::Usage("selftest produces a report, not rows".into()));
        }
    }
    Ok(rows)
}

/// Runs a command, writing the table (or self-test report) to `out` and
/// diagnostics to `diag`.
pub fn run<W: Write, D: Write>(cfg: &RunConfig, out: &mut W, diag: &mut D) -> Result<(), CliError> {
    if cfg.command == Command::Selftest {
        let report = run_selftest(cfg.precision, &cfg.context(), cfg.fault);
        report.write(out)?;
        return match report.first_failure() {
            Some(name) => Err(CliError::Selftest(name.to_string())),
            None => Ok(()),
        };
    }
    let rows = compute_records(cfg)?;
    write_records(cfg.format, &rows, out)?;
    if cfg.command == Command::Scan {
        scan_summary(cfg, diag)?;
    }
    Ok(())
}

fn scan_summary<D: Write>(cfg: &RunConfig, diag: &mut D) -> Result<(), CliError> {
    let n_max = cfg.n.map(|d| d.first).unwrap_or(3);
    let report = bar_schopka_scan(n_max, &cfg.context())?;
    let last = report.last();
    let violations: Vec<String> = report.tail_violations.iter().map(u32::to_string).collect();
    writeln!(
        diag,
        "scan: |log det| strictly decreasing on n in [{}, {n_max}]: {}",
        report.tail_start,
        if report.tail_strictly_decreasing { "yes".to_string() } else { format!("no (rises at n = {})", violations.join(", ")) }
    )?;
    writeln!(
        diag,
        "scan: decreasing within odd and within even n: {}",
        if report.parity_classes_decreasing { "yes" } else { "no" }
    )?;
    write!(diag, "scan: |log det(S^{n_max})| = {:.6e}", last.log_det.abs())?;
    if n_max == 25 {
        let below = last.log_det.abs() < SCAN_REGRESSION_THRESHOLD;
        write!(diag, " ({} regression threshold {SCAN_REGRESSION_THRESHOLD:e})", if below { "below" } else { "ABOVE" })?;
    }
    writeln!(diag)?;
    Ok(())
}
