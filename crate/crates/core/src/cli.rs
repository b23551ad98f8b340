//! Command-line front end: `factor`, `diff`, `check` and `counterexample`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 numeric precondition
//! failure, 3 finite-difference check above tolerance.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::decomposition::QrDecomposition;
use crate::derivative::givens_2x1_counterexample;
use crate::error::{QrError, Result};
use crate::fd::{check_all, FdConfig};
use crate::matrix::{DenseMatrix, Shape};
use crate::textio::{format_matrix, read_matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Print Q and R (plus Y, tau, T in the wy and factored modes).
    Factor,
    /// Print analytic derivatives along the direction matrix.
    Diff,
    /// Compare analytic derivatives with central finite differences.
    Check,
    /// Run the 2x1 Householder-versus-Givens comparison.
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Thin,
    Full,
    Wy,
    Factored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Parsed command line.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "qrderiv", version, about = "Householder QR factorisation and its derivatives")]
pub struct RunRequest {
    #[arg(value_enum)]
    pub command: Command,
    /// Matrix file for A.
    #[arg(long = "input")]
    pub input_path: PathBuf,
    /// Matrix file for the direction dA (required by diff and check;
    /// counterexample defaults to [1; 0]).
    #[arg(long = "direction")]
    pub direction_path: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "full")]
    pub mode: Mode,
    #[arg(long, default_value_t = 1e-6)]
    pub fd_step: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Largest relative error accepted by `check`.
    #[arg(long, default_value_t = 1e-5)]
    pub tolerance: f64,
}

/// What `run` produced: the process exit code and the two output streams.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub max_abs_err: f64,
    pub rel_err: f64,
}

/// Machine-readable report written to stdout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub shape: ShapeJson,
    pub results: BTreeMap<String, Vec<Vec<f64>>>,
    pub checks: Vec<CheckJson>,
}

impl Report {
    fn new(command: Command, shape: Shape) -> Self {
        Report {
            command,
            shape: ShapeJson { m: shape.m, n: shape.n, p: shape.p },
            results: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn put(&mut self, name: &str, value: &DenseMatrix) {
        self.results.insert(name.to_string(), value.to_rows());
    }

    pub fn matrix(&self, name: &str) -> Option<DenseMatrix> {
        DenseMatrix::from_rows(self.results.get(name)?).ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.shape;
        let _ = writeln!(out, "# {:?} m={} n={} p={}", self.command, s.m, s.n, s.p);
        for (name, rows) in &self.results {
            let _ = writeln!(out, "# {name}");
            match DenseMatrix::from_rows(rows) {
                Ok(m) if !m.is_empty() => out.push_str(&format_matrix(&m)),
                _ => out.push_str("(empty)\n"),
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "{:<6} {:>14} {:>14}", "name", "max_abs_err", "rel_err");
            for c in &self.checks {
                let _ = writeln!(out, "{:<6} {:>14.6e} {:>14.6e}", c.name, c.max_abs_err, c.rel_err);
            }
        }
        out
    }
}

/// Parses `args` (including the program name) into a request.
pub fn parse_args<I, T>(args: I) -> std::result::Result<RunRequest, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    RunRequest::try_parse_from(args)
}

fn tau_column(tau: &[f64]) -> DenseMatrix {
    DenseMatrix::from_fn(tau.len(), 1, |i, _| tau[i])
}

fn require_direction(req: &RunRequest, a: &DenseMatrix) -> Result<DenseMatrix> {
    let path = req
        .direction_path
        .as_ref()
        .ok_or_else(|| QrError::Config(format!("{:?} needs --direction", req.command).to_lowercase()))?;
    let da = read_matrix(path)?;
    if da.dims() != a.dims() {
        return Err(QrError::Dimension(format!(
            "direction is {}x{} but input is {}x{}",
            da.rows(),
            da.cols(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(da)
}

fn factor(req: &RunRequest, a: &DenseMatrix) -> Result<Report> {
    let qr = QrDecomposition::new(a)?;
    let mut rep = Report::new(Command::Factor, qr.shape());
    match req.mode {
        Mode::Thin => {
            rep.put("Q", &qr.q_thin());
            rep.put("R", &qr.r_nn());
        }
        Mode::Full | Mode::Wy | Mode::Factored => {
            rep.put("Q", &qr.q);
            rep.put("R", qr.r());
        }
    }
    if matches!(req.mode, Mode::Wy | Mode::Factored) {
        rep.put("Y", &qr.factored.y);
        rep.put("tau", &tau_column(&qr.factored.tau));
        rep.put("T", &qr.wy.t);
    }
    Ok(rep)
}

fn diff(req: &RunRequest, a: &DenseMatrix) -> Result<Report> {
    let da = require_direction(req, a)?;
    let qr = QrDecomposition::new(a)?;
    let mut rep = Report::new(Command::Diff, qr.shape());
    match req.mode {
        Mode::Thin => {
            let d = qr.thin_derivative(&da)?;
            rep.put("dQ", &d.dq);
            rep.put("dR", &d.dr);
        }
        Mode::Full => {
            let d = qr.full_derivative(&da)?;
            rep.put("dQ", &d.dq);
            rep.put("dR", &d.dr);
            rep.put("dY", &d.wy.dy);
            rep.put("dT", &d.wy.dt);
            rep.put("dtau", &tau_column(&d.wy.dtau));
            rep.put("Omega", &d.omega.assemble());
        }
        Mode::Wy => {
            let d = qr.wy_derivative(&da)?;
            rep.put("dY", &d.dy);
            rep.put("dT", &d.dt);
            rep.put("dtau", &tau_column(&d.dtau));
        }
        Mode::Factored => {
            let d = qr.factored_derivative(&da)?;
            rep.put("dY", &d.dy);
            rep.put("dtau", &tau_column(&d.dtau));
        }
    }
    Ok(rep)
}

fn check(req: &RunRequest, a: &DenseMatrix) -> Result<Report> {
    let da = require_direction(req, a)?;
    let cfg = FdConfig::with_step(req.fd_step);
    let fd = check_all(a, &da, &cfg)?;
    let mut rep = Report::new(Command::Check, fd.shape);
    rep.checks = fd
        .entries
        .iter()
        .map(|e| CheckJson { name: e.name.to_string(), max_abs_err: e.max_abs_err, rel_err: e.rel_err })
        .collect();
    Ok(rep)
}

fn counterexample(req: &RunRequest, a: &DenseMatrix) -> Result<Report> {
    if a.dims() != (2, 1) {
        return Err(QrError::Dimension(format!("counterexample needs a 2x1 input, got {}x{}", a.rows(), a.cols())));
    }
    let da = match &req.direction_path {
        Some(_) => require_direction(req, a)?,
        None => DenseMatrix::column(&[1.0, 0.0])?,
    };
    let rep_g = givens_2x1_counterexample([a.get(0, 0), a.get(1, 0)], [da.get(0, 0), da.get(1, 0)])?;
    let mut rep = Report::new(Command::Counterexample, Shape::new(2, 1)?);
    rep.put("dQ_mp_householder_formula", &rep_g.householder_formula);
    rep.put("dQ_mp_householder_true", &rep_g.householder_true);
    rep.put("dQ_mp_givens_formula", &rep_g.givens_formula);
    rep.put("dQ_mp_givens_true", &rep_g.givens_true);
    for (name, formula, truth, rel) in [
        ("householder", &rep_g.householder_formula, &rep_g.householder_true, rep_g.householder_rel_err),
        ("givens", &rep_g.givens_formula, &rep_g.givens_true, rep_g.givens_rel_err),
    ] {
        rep.checks.push(CheckJson {
            name: name.to_string(),
            max_abs_err: (formula - truth).max_abs(),
            rel_err: rel,
        });
    }
    Ok(rep)
}

fn error_outcome(err: &QrError) -> RunOutcome {
    let exit_code = if err.is_numeric() { EXIT_NUMERIC } else { EXIT_USAGE };
    RunOutcome {
        exit_code,
        stdout: String::new(),
        stderr: format!("error: {}: {err}\n", err.class_name()),
    }
}

/// Executes a request. Never panics on bad input; failures become exit codes.
pub fn run(req: &RunRequest) -> RunOutcome {
    let a = match read_matrix(&req.input_path) {
        Ok(a) => a,
        Err(e) => return error_outcome(&e),
    };
    let report = match req.command {
        Command::Factor => factor(req, &a),
        Command::Diff => diff(req, &a),
        Command::Check => check(req, &a),
        Command::Counterexample => counterexample(req, &a),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return error_outcome(&e),
    };

    let stdout = match req.output {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    let failed = req.command == Command::Check && report.checks.iter().any(|c| !(c.rel_err <= req.tolerance));
    RunOutcome {
        exit_code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK },
        stderr: if failed {
            format!("error: CheckFailed: relative error above tolerance {:e}\n", req.tolerance)
        } else {
            String::new()
        },
        stdout,
    }
}

/// Parses the process arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let req = match parse_args(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&req);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.exit_code
}
