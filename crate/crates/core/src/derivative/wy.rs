//! Derivatives of the compact WY (`Y`, `T`) and factored-form (`Y`, `τ`)
//! representations of the Householder `Q`.
//!
//! With `S = −T·Y_nnᵀ` and `C* = Y_nn⁻¹·(B_nn − Ψ)·S⁻¹`:
//!
//! ```text
//! ∂Y_nn = Y_nn·(L̂∘C*)
//! ∂Y_pn = B_pn·S⁻¹ − Y_pn·(U∘C*)
//! ∂T    = (U∘C*)·T − T·(L̂∘C*)ᵀ + S·Ψ·Y_nn⁻ᵀ
//! ∂τ(i) = (C*(i,i) − Ψ(i,i))·τ(i)
//! ```

use crate::derivative::thin::ThinDerivative;
use crate::error::{dim_err, QrError, Result};
use crate::householder::{t_inverse_from_y, CompactWY, FactoredQR};
use crate::matrix::{solve_dense, solve_unit_lower, solve_upper, DenseMatrix, Side};

#[derive(Debug, Clone, PartialEq)]
pub struct WYDerivative {
    /// `m × n`, strictly lower triangular in its leading `n × n` block.
    pub dy: DenseMatrix,
    /// Exactly upper triangular.
    pub dt: DenseMatrix,
    /// Diagonal of `dt`.
    pub dtau: Vec<f64>,
    /// `S = −T·Y_nnᵀ`
    pub s: DenseMatrix,
    pub c_star: DenseMatrix,
    /// `Z_pn = Y_pn·Y_nn⁻¹`
    pub z: DenseMatrix,
}

/// Derivative of the factored form: `∂Y` and `∂τ` only.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredDerivative {
    pub dy: DenseMatrix,
    pub dtau: Vec<f64>,
}

/// How `T⁻¹` is made available to the `S⁻¹` products.
enum TInverse<'a> {
    /// Solve against the stored upper triangular `T`.
    Solve(&'a DenseMatrix),
    /// Explicit `T⁻¹`.
    Explicit(DenseMatrix),
}

/// Applies `S⁻¹ = −Y_nn⁻ᵀ·T⁻¹` and `S⁻ᵀ = −T⁻ᵀ·Y_nn⁻¹` by triangular solves.
pub(crate) struct SOperator<'a> {
    y_nn: DenseMatrix,
    t_inv: TInverse<'a>,
}

impl<'a> SOperator<'a> {
    pub(crate) fn from_stored_t(y_nn: DenseMatrix, t: &'a DenseMatrix) -> Self {
        SOperator { y_nn, t_inv: TInverse::Solve(t) }
    }

    fn from_t_inverse(y_nn: DenseMatrix, t_inv: DenseMatrix) -> Self {
        SOperator { y_nn, t_inv: TInverse::Explicit(t_inv) }
    }

    /// `M·T⁻¹`
    fn t_inv_right(&self, m: &DenseMatrix) -> Result<DenseMatrix> {
        match &self.t_inv {
            TInverse::Solve(t) => solve_upper(t, m, Side::Right),
            TInverse::Explicit(ti) => Ok(m * ti),
        }
    }

    /// `T⁻¹·M`
    fn t_inv_left(&self, m: &DenseMatrix) -> Result<DenseMatrix> {
        match &self.t_inv {
            TInverse::Solve(t) => solve_upper(t, m, Side::Left),
            TInverse::Explicit(ti) => Ok(ti * m),
        }
    }

    /// `M·S⁻¹ = −(M·Y_nn⁻ᵀ)·T⁻¹`
    pub(crate) fn s_inv_right(&self, m: &DenseMatrix) -> Result<DenseMatrix> {
        let w = solve_unit_lower(&self.y_nn, &m.transpose(), Side::Left)?.transpose();
        Ok(-&self.t_inv_right(&w)?)
    }

    /// `M·S⁻ᵀ = −(T⁻¹·Mᵀ)ᵀ·Y_nn⁻¹`
    pub(crate) fn s_inv_t_right(&self, m: &DenseMatrix) -> Result<DenseMatrix> {
        let w = self.t_inv_left(&m.transpose())?.transpose();
        Ok(-&solve_unit_lower(&self.y_nn, &w, Side::Right)?)
    }
}

fn check_consistent(y: &DenseMatrix, thin: &ThinDerivative) -> Result<()> {
    if y.dims() != thin.b.dims() {
        return dim_err(format!(
            "Y is {}x{} but the thin derivative is {}x{}",
            y.rows(),
            y.cols(),
            thin.b.rows(),
            thin.b.cols()
        ));
    }
    Ok(())
}

fn nonzero_tau(tau: &[f64]) -> Result<()> {
    match tau.iter().position(|&t| t == 0.0) {
        Some(index) => Err(QrError::NonInvertibleT { index }),
        None => Ok(()),
    }
}

/// Pieces shared by the compact WY and factored-form derivatives.
struct YDerivative {
    dy: DenseMatrix,
    dtau: Vec<f64>,
    c_star: DenseMatrix,
}

fn y_derivative(y: &DenseMatrix, tau: &[f64], s_op: &SOperator<'_>, thin: &ThinDerivative) -> Result<YDerivative> {
    let n = y.cols();
    let p = y.rows() - n;
    let y_nn = &s_op.y_nn;
    let y_pn = y.bottom_rows(p);

    let lhs = solve_unit_lower(y_nn, &(&thin.b_nn() - &thin.psi), Side::Left)?;
    let c_star = s_op.s_inv_right(&lhs)?;
    let c_lower = c_star.mask_strict_lower();
    let c_upper = c_star.mask_upper();

    let dy_nn = (y_nn * &c_lower).mask_strict_lower();
    let dy_pn = &s_op.s_inv_right(&thin.b_pn())? - &(&y_pn * &c_upper);
    let dy = dy_nn.vstack(&dy_pn)?;

    let dtau = (0..n)
        .map(|i| (c_star.get(i, i) - thin.psi.get(i, i)) * tau[i])
        .collect();
    Ok(YDerivative { dy, dtau, c_star })
}

/// Derivative of the compact WY representation, using the stored `T`.
pub fn wy_derivative(wy: &CompactWY, thin: &ThinDerivative) -> Result<WYDerivative> {
    check_consistent(&wy.y, thin)?;
    let tau = wy.tau();
    nonzero_tau(&tau)?;
    let y_nn = wy.y_nn();
    let s_op = SOperator::from_stored_t(y_nn.clone(), &wy.t);
    let YDerivative { dy, dtau, c_star } = y_derivative(&wy.y, &tau, &s_op, thin)?;

    let s = -&(&wy.t * &y_nn.transpose());
    // S·Ψ·Y_nn⁻ᵀ = S·(Y_nn⁻¹·Ψᵀ)ᵀ
    let psi_yinvt = solve_unit_lower(&y_nn, &thin.psi.transpose(), Side::Left)?.transpose();
    let dt = &(&(&c_star.mask_upper() * &wy.t) - &(&wy.t * &c_star.mask_strict_lower().transpose()))
        + &(&s * &psi_yinvt);
    let mut dt = dt.mask_upper();
    for (i, &d) in dtau.iter().enumerate() {
        dt.set(i, i, d);
    }

    let z = solve_unit_lower(&y_nn, &wy.y_pn(), Side::Right)?;
    Ok(WYDerivative { dy, dt, dtau, s, c_star, z })
}

/// Derivative of the factored form `(Y, τ)`. `T⁻¹` is rebuilt from `YᵀY`
/// rather than taken from a stored `T`.
pub fn factored_derivative(fqr: &FactoredQR, thin: &ThinDerivative) -> Result<FactoredDerivative> {
    check_consistent(&fqr.y, thin)?;
    nonzero_tau(&fqr.tau)?;
    let y_nn = fqr.y.top_rows(fqr.shape.n);
    let s_op = SOperator::from_t_inverse(y_nn, t_inverse_from_y(&fqr.y));
    let YDerivative { dy, dtau, .. } = y_derivative(&fqr.y, &fqr.tau, &s_op, thin)?;
    Ok(FactoredDerivative { dy, dtau })
}

/// `Z_pn` computed as `Y_pn·Y_nn⁻¹` and, independently, as `Q_pn·(Q_nn − I)⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZBlock {
    /// The `Y` form; this is the value used downstream.
    pub z: DenseMatrix,
    pub z_from_q: DenseMatrix,
}

impl ZBlock {
    /// Relative Frobenius difference between the two forms.
    pub fn discrepancy(&self) -> f64 {
        crate::matrix::relative_difference(&self.z_from_q, &self.z)
    }
}

pub fn z_block(wy: &CompactWY, q_mm: &DenseMatrix) -> Result<ZBlock> {
    let (m, n) = (wy.shape.m, wy.shape.n);
    if q_mm.dims() != (m, m) {
        return dim_err(format!("Q is {}x{}, expected {m}x{m}", q_mm.rows(), q_mm.cols()));
    }
    if let Some(index) = wy.zero_tau() {
        return Err(QrError::NonInvertibleT { index });
    }
    let z = solve_unit_lower(&wy.y_nn(), &wy.y_pn(), Side::Right)?;
    let q_nn_minus_i = &q_mm.block(0, 0, n, n) - &DenseMatrix::identity(n);
    let z_from_q = solve_dense(&q_nn_minus_i, &q_mm.block(n, 0, m - n, n), Side::Right)?;
    Ok(ZBlock { z, z_from_q })
}
