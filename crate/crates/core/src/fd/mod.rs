//! Central finite differences of matrix-valued functions, and a checker that
//! compares every analytic derivative against them.
//!
//! The difference quotients here only ever call the factorisation itself,
//! never the analytic derivative routines.

pub mod extended;

use crate::decomposition::QrDecomposition;
use crate::error::{QrError, Result};
use crate::householder::{assemble_q, qr_factor};
use crate::matrix::{DenseMatrix, Shape};

/// Smallest step accepted; below this rounding swamps the quotient.
pub const MIN_STEP: f64 = 1e-12;

/// Step pair used to measure the O(h²) decay of the central difference.
pub const DECAY_STEPS: (f64, f64) = (1e-4, 1e-5);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub h: f64,
    /// Also evaluate at `h/2` and return `(4·D(h/2) − D(h))/3`.
    pub richardson: bool,
    pub seed: u64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { h: 1e-6, richardson: false, seed: 0 }
    }
}

impl FdConfig {
    pub fn with_step(h: f64) -> Self {
        FdConfig { h, ..FdConfig::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.h.is_finite() || self.h < MIN_STEP {
            return Err(QrError::Config(format!(
                "finite-difference step must be finite and >= {MIN_STEP:e}, got {}",
                self.h
            )));
        }
        Ok(())
    }
}

/// A function value together with the discrete state it was computed on.
///
/// Two evaluations are comparable when their `branch` keys are compatible:
/// equal entry by entry, except that [`BRANCH_REGULAR`] also matches the two
/// tail-sign labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub value: DenseMatrix,
    pub branch: Vec<i8>,
}

impl Probe {
    /// A value with no discrete structure.
    pub fn plain(value: DenseMatrix) -> Self {
        Probe { value, branch: Vec::new() }
    }
}

/// Reflector is the identity (`τ = 0`).
pub const BRANCH_IDENTITY: i8 = 0;
/// Positive pivot with a single positive tail entry.
pub const BRANCH_TAIL_POSITIVE: i8 = 1;
/// Positive pivot with a single negative tail entry.
pub const BRANCH_TAIL_NEGATIVE: i8 = 2;
/// Any other reflector; continuous in every direction.
pub const BRANCH_REGULAR: i8 = 3;

/// Branch label of one Householder step from its `τ`, the length of the
/// subcolumn below the pivot, and the first entry of `v` below the pivot.
///
/// The reflector jumps where the active subcolumn passes through the positive
/// pivot ray. With a one-entry tail a line crosses that ray generically, and
/// on the positive-pivot side (`τ < 1`) the tail sign says which side it is
/// on; `v` below the pivot has the opposite sign of the tail. Longer tails
/// only hit the ray exactly, which shows up as `τ = 0`.
pub fn reflector_branch(tau: f64, tail_len: usize, v_below: f64) -> i8 {
    if tau == 0.0 {
        BRANCH_IDENTITY
    } else if tail_len == 1 && tau < 1.0 {
        if v_below < 0.0 {
            BRANCH_TAIL_POSITIVE
        } else {
            BRANCH_TAIL_NEGATIVE
        }
    } else {
        BRANCH_REGULAR
    }
}

/// Whether two branch keys allow their evaluations to be differenced.
pub fn branches_compatible(a: &[i8], b: &[i8]) -> bool {
    a.len() == b.len()
        && a
            .iter()
            .zip(b)
            .all(|(&x, &y)| x == y || (x.max(y) == BRANCH_REGULAR && x.min(y) != BRANCH_IDENTITY))
}

fn central<F>(f: &F, a: &DenseMatrix, da: &DenseMatrix, h: f64, seen: &mut Vec<Vec<i8>>) -> Result<DenseMatrix>
where
    F: Fn(&DenseMatrix) -> Result<Probe>,
{
    let step = da.scale(h);
    let plus = f(&(a + &step))?;
    let minus = f(&(a - &step))?;
    for probe in [&plus, &minus] {
        if seen.iter().any(|key| !branches_compatible(key, &probe.branch)) {
            return Err(QrError::BranchChange);
        }
        seen.push(probe.branch.clone());
    }
    Ok((&plus.value - &minus.value).scale(0.5 / h))
}

/// Directional derivative of `f` at `a` along `da` by central differences.
pub fn directional_fd<F>(f: F, a: &DenseMatrix, da: &DenseMatrix, cfg: &FdConfig) -> Result<DenseMatrix>
where
    F: Fn(&DenseMatrix) -> Result<Probe>,
{
    cfg.validate()?;
    if a.dims() != da.dims() {
        return Err(QrError::Dimension(format!(
            "direction is {}x{}, point is {}x{}",
            da.rows(),
            da.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let mut seen = Vec::new();
    let d_h = central(&f, a, da, cfg.h, &mut seen)?;
    if !cfg.richardson {
        return Ok(d_h);
    }
    let d_half = central(&f, a, da, 0.5 * cfg.h, &mut seen)?;
    Ok((&d_half.scale(4.0) - &d_h).scale(1.0 / 3.0))
}

/// Factorisation outputs that the checker differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    R,
    QThin,
    QComplement,
    Y,
    T,
    Tau,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [
        Quantity::R,
        Quantity::QThin,
        Quantity::QComplement,
        Quantity::Y,
        Quantity::T,
        Quantity::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::R => "R",
            Quantity::QThin => "Q_mn",
            Quantity::QComplement => "Q_mp",
            Quantity::Y => "Y",
            Quantity::T => "T",
            Quantity::Tau => "tau",
        }
    }
}

/// Evaluates one quantity of the Householder factorisation of `a`, keyed by
/// the [`reflector_branch`] of every step.
pub fn qr_quantity(a: &DenseMatrix, quantity: Quantity) -> Result<Probe> {
    let f = qr_factor(a)?;
    let (m, n) = (f.shape.m, f.shape.n);
    let branch = (0..n)
        .map(|k| {
            let below = if k + 1 < m { f.y.get(k + 1, k) } else { 0.0 };
            reflector_branch(f.tau[k], m - k - 1, below)
        })
        .collect();
    let value = match quantity {
        Quantity::R => f.r,
        Quantity::QThin => assemble_q(&f.to_compact_wy()).left_cols(n),
        Quantity::QComplement => assemble_q(&f.to_compact_wy()).right_cols(f.shape.p),
        Quantity::Y => f.y,
        Quantity::T => f.to_compact_wy().t,
        Quantity::Tau => DenseMatrix::column(&f.tau)?,
    };
    Ok(Probe { value, branch })
}

/// Comparison of one analytic derivative against finite differences.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckEntry {
    pub name: &'static str,
    pub max_abs_err: f64,
    /// `‖fd − analytic‖_F / ‖analytic‖_F` (absolute when the derivative is zero).
    pub rel_err: f64,
    /// `err(1e-4) / err(1e-5)`; about 100 for O(h²) decay. Both quotients
    /// are taken in double-double arithmetic (see [`extended`]) so that the
    /// ratio reflects truncation rather than `f64` rounding. `None` when the
    /// smaller-step error is exactly zero.
    pub decay_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub shape: Shape,
    pub h: f64,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn max_rel_err(&self) -> f64 {
        self.entries.iter().map(|e| e.rel_err).fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.entries.iter().all(|e| e.rel_err <= tolerance)
    }

    pub fn entry(&self, quantity: Quantity) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == quantity.name())
    }
}

fn relative(err: &DenseMatrix, reference: &DenseMatrix) -> f64 {
    let e = err.frobenius_norm();
    let s = reference.frobenius_norm();
    if s > 0.0 {
        e / s
    } else {
        e
    }
}

/// Checks `∂R`, `∂Q_mn`, `∂Q_mp`, `∂Y`, `∂T` and `∂τ` against central differences.
pub fn check_all(a: &DenseMatrix, da: &DenseMatrix, cfg: &FdConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let dec = QrDecomposition::new(a)?;
    let full = dec.full_derivative(da)?;
    let analytic = |q: Quantity| -> Result<DenseMatrix> {
        Ok(match q {
            Quantity::R => full.dr.clone(),
            Quantity::QThin => full.dq_mn(),
            Quantity::QComplement => full.dq_mp(),
            Quantity::Y => full.wy.dy.clone(),
            Quantity::T => full.wy.dt.clone(),
            Quantity::Tau => DenseMatrix::column(&full.wy.dtau)?,
        })
    };

    let mut entries = Vec::with_capacity(Quantity::ALL.len());
    for q in Quantity::ALL {
        let exact = analytic(q)?;
        let f = |x: &DenseMatrix| qr_quantity(x, q);
        let err = &directional_fd(f, a, da, cfg)? - &exact;
        let coarse = &extended::central_difference(a, da, DECAY_STEPS.0, q)? - &exact;
        let fine = &extended::central_difference(a, da, DECAY_STEPS.1, q)? - &exact;
        let fine_norm = fine.frobenius_norm();
        entries.push(CheckEntry {
            name: q.name(),
            max_abs_err: err.max_abs(),
            rel_err: relative(&err, &exact),
            decay_ratio: (fine_norm > 0.0).then(|| coarse.frobenius_norm() / fine_norm),
        });
    }
    Ok(CheckReport { shape: dec.shape(), h: cfg.h, entries })
}
