//! Householder QR evaluated in double-double arithmetic (about 32 significant
//! digits), for difference quotients whose step is too small for `f64`.
//!
//! At `h = 1e-5` the rounding floor of an `f64` central difference is about
//! `eps/h ≈ 1e-11`, the same size as its truncation error, so the measured
//! error stops following `h²`. Evaluating the factorisation here pushes that
//! floor below `1e-25`. Only the finished quotient is rounded back to `f64`.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{QrError, Result};
use crate::fd::{branches_compatible, reflector_branch, Quantity};
use crate::matrix::DenseMatrix;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct Dd {
    hi: f64,
    lo: f64,
}

/// `a + b` as an exact pair.
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
}

/// `a + b` as an exact pair, given `|a| ≥ |b|`.
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

/// `a·b` as an exact pair.
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd { hi: p, lo: a.mul_add(b, -p) }
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let y = Dd::from(self.hi.sqrt());
        y + (self - y * y) / (y + y)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> Self {
        x.hi + x.lo
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let v = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(v.hi, t.lo + v.lo)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, o: Dd) {
        *self = *self + o;
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = two_prod(self.hi, o.hi);
        quick_two_sum(p.hi, p.lo + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    /// Long division: one `f64` quotient digit, then a correction from the
    /// exact remainder.
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        let q = quick_two_sum(q1, q2);
        q + Dd::from(q3)
    }
}

/// Row-major double-double matrix.
#[derive(Clone)]
struct DdMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        DdMatrix { rows, cols, data: vec![Dd::ZERO; rows * cols] }
    }

    fn identity(n: usize) -> Self {
        let mut m = DdMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Dd::from(1.0);
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> Dd {
        self.data[i * self.cols + j]
    }

    fn put(&mut self, i: usize, j: usize, v: Dd) {
        self.data[i * self.cols + j] = v;
    }

    /// `a + s·d`; the product `s·d` of two doubles is exact here.
    fn perturbed(a: &DenseMatrix, d: &DenseMatrix, s: f64) -> Self {
        let data = a
            .as_slice()
            .iter()
            .zip(d.as_slice())
            .map(|(&x, &y)| Dd::from(x) + two_prod(s, y))
            .collect();
        DdMatrix { rows: a.rows(), cols: a.cols(), data }
    }

    fn columns(&self, range: std::ops::Range<usize>) -> DdMatrix {
        let cols = range.len();
        let mut out = DdMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for (k, j) in range.clone().enumerate() {
                out.put(i, k, self.at(i, j));
            }
        }
        out
    }

    /// `A ← (I − τ·v·vᵀ)·A` on rows `pivot..` and columns `from..`.
    fn reflect(&mut self, v: &[Dd], tau: Dd, pivot: usize, from: usize) {
        for j in from..self.cols {
            let mut dot = Dd::ZERO;
            for i in pivot..self.rows {
                dot += v[i] * self.at(i, j);
            }
            let s = tau * dot;
            for i in pivot..self.rows {
                let x = self.at(i, j) - s * v[i];
                self.put(i, j, x);
            }
        }
    }
}

struct DdFactors {
    y: DdMatrix,
    tau: Vec<Dd>,
    r: DdMatrix,
}

fn factor(mut a: DdMatrix) -> Result<DdFactors> {
    let (m, n) = (a.rows, a.cols);
    let mut y = DdMatrix::zeros(m, n);
    let mut tau = Vec::with_capacity(n);
    for k in 0..n {
        let alpha = a.at(k, k);
        let mut sigma = Dd::ZERO;
        for i in k + 1..m {
            sigma += a.at(i, k) * a.at(i, k);
        }
        let mut v = vec![Dd::ZERO; m];
        v[k] = Dd::from(1.0);
        let zero = Dd::ZERO;
        let t = if sigma == zero {
            if alpha > zero {
                zero
            } else if alpha < zero {
                Dd::from(2.0)
            } else {
                return Err(QrError::RankDeficient { step: k });
            }
        } else {
            let norm = (alpha * alpha + sigma).sqrt();
            let v1 = if alpha <= zero { alpha - norm } else { -sigma / (alpha + norm) };
            for i in k + 1..m {
                v[i] = a.at(i, k) / v1;
            }
            let mut vv = Dd::ZERO;
            for x in &v[k..] {
                vv += *x * *x;
            }
            Dd::from(2.0) / vv
        };
        a.reflect(&v, t, k, k);
        for i in k + 1..m {
            a.put(i, k, zero);
        }
        for (i, x) in v.iter().enumerate() {
            y.put(i, k, *x);
        }
        tau.push(t);
    }
    Ok(DdFactors { y, tau, r: a })
}

fn assemble_q(f: &DdFactors) -> DdMatrix {
    let mut q = DdMatrix::identity(f.y.rows);
    for k in (0..f.y.cols).rev() {
        let v: Vec<Dd> = (0..f.y.rows).map(|i| f.y.at(i, k)).collect();
        q.reflect(&v, f.tau[k], k, 0);
    }
    q
}

/// `T(0..i, i) = −τ(i)·T(0..i, 0..i)·Y(:, 0..i)ᵀ·y(i)`, `T(i, i) = τ(i)`.
fn build_t(f: &DdFactors) -> DdMatrix {
    let (m, n) = (f.y.rows, f.y.cols);
    let mut t = DdMatrix::zeros(n, n);
    for i in 0..n {
        let w: Vec<Dd> = (0..i)
            .map(|j| (0..m).fold(Dd::ZERO, |acc, r| acc + f.y.at(r, j) * f.y.at(r, i)))
            .collect();
        for row in 0..i {
            let s = (row..i).fold(Dd::ZERO, |acc, j| acc + t.at(row, j) * w[j]);
            t.put(row, i, -f.tau[i] * s);
        }
        t.put(i, i, f.tau[i]);
    }
    t
}

fn evaluate(a: DdMatrix, quantity: Quantity) -> Result<(DdMatrix, Vec<i8>)> {
    let f = factor(a)?;
    let (m, n) = (f.y.rows, f.y.cols);
    let branch = (0..n)
        .map(|k| {
            let below = if k + 1 < m { f.y.at(k + 1, k).hi } else { 0.0 };
            reflector_branch(f.tau[k].hi, m - k - 1, below)
        })
        .collect();
    let value = match quantity {
        Quantity::R => f.r.clone(),
        Quantity::QThin => assemble_q(&f).columns(0..n),
        Quantity::QComplement => assemble_q(&f).columns(n..f.y.rows),
        Quantity::Y => f.y.clone(),
        Quantity::T => build_t(&f),
        Quantity::Tau => DdMatrix { rows: n, cols: 1, data: f.tau.clone() },
    };
    Ok((value, branch))
}

/// Central difference of one factorisation output along `da`, with both
/// evaluations carried out in double-double arithmetic.
pub fn central_difference(a: &DenseMatrix, da: &DenseMatrix, h: f64, quantity: Quantity) -> Result<DenseMatrix> {
    if a.dims() != da.dims() {
        return Err(QrError::Dimension(format!(
            "direction is {}x{}, point is {}x{}",
            da.rows(),
            da.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let (plus, branch_plus) = evaluate(DdMatrix::perturbed(a, da, h), quantity)?;
    let (minus, branch_minus) = evaluate(DdMatrix::perturbed(a, da, -h), quantity)?;
    if !branches_compatible(&branch_plus, &branch_minus) {
        return Err(QrError::BranchChange);
    }
    let scale = Dd::from(0.5) / Dd::from(h);
    let data: Vec<f64> = plus
        .data
        .iter()
        .zip(&minus.data)
        .map(|(&p, &m)| f64::from((p - m) * scale))
        .collect();
    DenseMatrix::new(plus.rows, plus.cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{directional_fd, qr_quantity, FdConfig};
    use crate::random::{instance, seeded_rng};

    fn residual(x: Dd) -> f64 {
        (x.hi + x.lo).abs()
    }

    #[test]
    fn double_double_arithmetic() {
        let three = Dd::from(3.0);
        let third = Dd::from(1.0) / three;
        assert_ne!(third.lo, 0.0);
        assert!(residual(third * three - Dd::from(1.0)) < 1e-31);
        let root = Dd::from(2.0).sqrt();
        assert!(residual(root * root - Dd::from(2.0)) < 1e-31);
        // 0.1 is not a double, but 0.1·10 − 1 is recovered to ~1e-17 exactly
        let exact = two_prod(0.1, 10.0) - Dd::from(1.0);
        assert_eq!(f64::from(exact), 0.1f64.mul_add(10.0, -1.0));
    }

    #[test]
    fn matches_f64_difference_at_moderate_step() {
        let mut rng = seeded_rng(11);
        let (a, da) = instance(&mut rng, 6, 3);
        for q in Quantity::ALL {
            let ext = central_difference(&a, &da, 1e-3, q).unwrap();
            let plain = directional_fd(|x| qr_quantity(x, q), &a, &da, &FdConfig::with_step(1e-3)).unwrap();
            assert!((&ext - &plain).max_abs() < 1e-9, "{}", q.name());
        }
    }

    #[test]
    fn golden_r_derivative() {
        let a = DenseMatrix::column(&[3.0, 4.0]).unwrap();
        let da = DenseMatrix::column(&[1.0, 0.0]).unwrap();
        let d = central_difference(&a, &da, 1e-5, Quantity::R).unwrap();
        // r(ε) = hypot(3 + ε, 4) has r'''(0) = −144/3125, so the error is h²·r'''/6
        let expected = 0.6 - 1e-10 * 144.0 / 3125.0 / 6.0;
        assert!((d.get(0, 0) - expected).abs() < 2e-16, "{:e}", d.get(0, 0) - expected);
        assert_eq!(d.get(1, 0), 0.0);
    }

    #[test]
    fn detects_branch_change() {
        let a = DenseMatrix::column(&[1.0, 1e-6]).unwrap();
        let da = DenseMatrix::column(&[0.0, 1.0]).unwrap();
        let err = central_difference(&a, &da, 1e-6, Quantity::R).unwrap_err();
        assert!(matches!(err, QrError::BranchChange));
    }
}
