//! Column-by-column Householder QR in factored form, the compact WY matrix
//! `T`, and explicit assembly of `Q`.
//!
//! Reflections are chosen so that every diagonal entry of `R` is positive,
//! which makes the thin factorisation unique. `Q = H(1)·H(2)···H(n)` with
//! `H(i) = I − τ(i)·v(i)·v(i)ᵀ` and `Q = I − Y·T·Yᵀ`.

use crate::error::{dim_err, QrError, Result};
use crate::matrix::{solve_upper, DenseMatrix, Shape, Side};

/// One Householder reflection `H = I − tau·v·vᵀ` acting from row `pivot` down.
#[derive(Debug, Clone, PartialEq)]
pub struct HouseholderStep {
    pub pivot: usize,
    /// Full-length vector with `v[..pivot] == 0` and `v[pivot] == 1`.
    pub v: Vec<f64>,
    pub tau: f64,
    /// Diagonal entry produced: `H·x = r·e_pivot` on the active subcolumn.
    pub r: f64,
}

impl HouseholderStep {
    /// The explicit `m × m` reflection matrix.
    pub fn matrix(&self) -> DenseMatrix {
        let m = self.v.len();
        DenseMatrix::from_fn(m, m, |i, j| {
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - self.tau * (self.v[i] * self.v[j])
        })
    }
}

/// Computes the reflection that maps `x[pivot..]` to `+‖x[pivot..]‖·e_pivot`.
///
/// A subcolumn that is already a positive multiple of `e_pivot` yields the
/// `tau = 0` special case (`H = I`).
pub fn householder_vector(x: &[f64], pivot: usize) -> Result<HouseholderStep> {
    if pivot >= x.len() {
        return dim_err(format!("pivot {pivot} out of range for length {}", x.len()));
    }
    let alpha = x[pivot];
    let tail = &x[pivot + 1..];
    let sigma: f64 = tail.iter().map(|t| t * t).sum();
    let mut v = vec![0.0; x.len()];
    v[pivot] = 1.0;

    if sigma == 0.0 {
        return if alpha > 0.0 {
            Ok(HouseholderStep { pivot, v, tau: 0.0, r: alpha })
        } else if alpha < 0.0 {
            // pure sign flip of the pivot entry
            Ok(HouseholderStep { pivot, v, tau: 2.0, r: -alpha })
        } else {
            Err(QrError::RankDeficient { step: pivot })
        };
    }

    let norm = alpha.hypot(sigma.sqrt());
    // v1 = alpha − norm, evaluated without cancellation when alpha > 0
    let v1 = if alpha <= 0.0 { alpha - norm } else { -sigma / (alpha + norm) };
    for (dst, &t) in v[pivot + 1..].iter_mut().zip(tail) {
        *dst = t / v1;
    }
    let tau = 2.0 / v.iter().map(|t| t * t).sum::<f64>();
    Ok(HouseholderStep { pivot, v, tau, r: norm })
}

/// Factored-form output of Householder QR: `Y`, `tau` and `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredQR {
    pub shape: Shape,
    /// `m × n` unit lower triangular; column `i` is the reflection vector `v(i)`.
    pub y: DenseMatrix,
    pub tau: Vec<f64>,
    /// `m × n` upper triangular with positive diagonal; rows `n..m` are zero.
    pub r: DenseMatrix,
}

impl FactoredQR {
    /// Leading `n × n` block of `R`.
    pub fn r_nn(&self) -> DenseMatrix {
        self.r.top_rows(self.shape.n)
    }

    /// The individual reflections, in application order.
    pub fn steps(&self) -> Vec<HouseholderStep> {
        (0..self.shape.n)
            .map(|i| HouseholderStep {
                pivot: i,
                v: self.y.col_vec(i),
                tau: self.tau[i],
                r: self.r.get(i, i),
            })
            .collect()
    }

    /// Index of the first reflection with `tau == 0`, if any.
    pub fn zero_tau(&self) -> Option<usize> {
        self.tau.iter().position(|&t| t == 0.0)
    }

    pub fn to_compact_wy(&self) -> CompactWY {
        CompactWY {
            shape: self.shape,
            y: self.y.clone(),
            t: build_t_forward(&self.y, &self.tau),
        }
    }
}

/// Classical Householder QR of an `m × n` matrix with `m ≥ n`.
pub fn qr_factor(a: &DenseMatrix) -> Result<FactoredQR> {
    let shape = Shape::of(a)?;
    let Shape { m, n, .. } = shape;
    let mut work = a.clone();
    let mut y = DenseMatrix::zeros(m, n);
    let mut tau = Vec::with_capacity(n);

    for i in 0..n {
        let step = householder_vector(&work.col_vec(i), i).map_err(|e| match e {
            QrError::RankDeficient { .. } => QrError::RankDeficient { step: i },
            other => other,
        })?;
        if step.tau != 0.0 {
            for j in i + 1..n {
                let dot: f64 = (i..m).map(|k| step.v[k] * work.get(k, j)).sum();
                let s = step.tau * dot;
                for k in i..m {
                    let val = work.get(k, j) - s * step.v[k];
                    work.set(k, j, val);
                }
            }
        }
        work.set(i, i, step.r);
        for k in i + 1..m {
            work.set(k, i, 0.0);
        }
        for k in i..m {
            y.set(k, i, step.v[k]);
        }
        tau.push(step.tau);
    }

    Ok(FactoredQR { shape, y, tau, r: work })
}

/// Compact WY representation `Q = I − Y·T·Yᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactWY {
    pub shape: Shape,
    pub y: DenseMatrix,
    /// `n × n` upper triangular with `diag(T) = tau`.
    pub t: DenseMatrix,
}

impl CompactWY {
    pub fn y_nn(&self) -> DenseMatrix {
        self.y.top_rows(self.shape.n)
    }

    pub fn y_pn(&self) -> DenseMatrix {
        self.y.bottom_rows(self.shape.p)
    }

    pub fn tau(&self) -> Vec<f64> {
        self.t.diagonal()
    }

    pub fn zero_tau(&self) -> Option<usize> {
        self.t.diagonal().iter().position(|&t| t == 0.0)
    }

    /// `T⁻¹`, by triangular solve against the stored `T`.
    pub fn t_inverse(&self) -> Result<DenseMatrix> {
        solve_upper(&self.t, &DenseMatrix::identity(self.shape.n), Side::Left)
    }
}

/// Forward accumulation of `T` so that `I − Y·T·Yᵀ = H(1)···H(n)`.
pub fn build_t_forward(y: &DenseMatrix, tau: &[f64]) -> DenseMatrix {
    let n = y.cols();
    assert_eq!(tau.len(), n, "tau has {} entries for {n} reflections", tau.len());
    let mut t = DenseMatrix::zeros(n, n);
    for i in 0..n {
        t.set(i, i, tau[i]);
        if i == 0 || tau[i] == 0.0 {
            continue;
        }
        // w = Y(:, 0..i)ᵀ · y_i
        let w: Vec<f64> = (0..i)
            .map(|j| (0..y.rows()).map(|k| y.get(k, j) * y.get(k, i)).sum())
            .collect();
        // T(0..i, i) = −tau_i · T(0..i, 0..i) · w
        for r in 0..i {
            let s: f64 = (r..i).map(|c| t.get(r, c) * w[c]).sum();
            t.set(r, i, -tau[i] * s);
        }
    }
    t
}

/// `T⁻¹` from `Y` alone: strict upper part of `YᵀY` plus half its diagonal.
pub fn t_inverse_from_y(y: &DenseMatrix) -> DenseMatrix {
    let g = &y.transpose() * y;
    DenseMatrix::from_fn(g.rows(), g.cols(), |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => g.get(i, j),
        std::cmp::Ordering::Equal => 0.5 * g.get(i, i),
        std::cmp::Ordering::Greater => 0.0,
    })
}

/// Explicit `Q_mm = I − Y·T·Yᵀ`.
pub fn assemble_q(wy: &CompactWY) -> DenseMatrix {
    let m = wy.shape.m;
    let yt = &wy.y * &wy.t;
    &DenseMatrix::identity(m) - &(&yt * &wy.y.transpose())
}

/// First `n` columns of `Q_mm`.
pub fn assemble_q_thin(wy: &CompactWY) -> DenseMatrix {
    let Shape { m, n, .. } = wy.shape;
    let yt = &wy.y * &wy.t;
    let y_top = wy.y.top_rows(n).transpose();
    // columns j < n of Yᵀ only involve rows 0..n of Y
    &DenseMatrix::identity(m).left_cols(n) - &(&yt * &y_top)
}
