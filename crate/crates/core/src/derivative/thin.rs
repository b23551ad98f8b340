use crate::error::{dim_err, Result};
use crate::matrix::{solve_upper, DenseMatrix, Side};

/// Derivative of the thin factorisation `A_mn = Q_mn·R_nn`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThinDerivative {
    /// `∂Q_mn = B − Q_mn·Ψ`
    pub dq: DenseMatrix,
    /// `∂R_nn = Ψ·R_nn`, exactly upper triangular.
    pub dr: DenseMatrix,
    /// `B = ∂A·R_nn⁻¹`
    pub b: DenseMatrix,
    /// `E = Q_mnᵀ·B`
    pub e: DenseMatrix,
    /// `Ψ = ∂R_nn·R_nn⁻¹ = (U∘E) + (L̂∘E)ᵀ`
    pub psi: DenseMatrix,
}

impl ThinDerivative {
    pub fn b_nn(&self) -> DenseMatrix {
        self.b.top_rows(self.b.cols())
    }

    pub fn b_pn(&self) -> DenseMatrix {
        self.b.bottom_rows(self.b.rows() - self.b.cols())
    }
}

/// Derivative of the thin QR factors along `da`.
///
/// Only needs `R_nn` invertible; `τ = 0` reflections are fine here.
pub fn thin_derivative(q_mn: &DenseMatrix, r_nn: &DenseMatrix, da: &DenseMatrix) -> Result<ThinDerivative> {
    let (m, n) = q_mn.dims();
    if r_nn.dims() != (n, n) {
        return dim_err(format!("R_nn is {}x{}, expected {n}x{n}", r_nn.rows(), r_nn.cols()));
    }
    if da.dims() != (m, n) {
        return dim_err(format!("dA is {}x{}, expected {m}x{n}", da.rows(), da.cols()));
    }
    let b = solve_upper(r_nn, da, Side::Right)?;
    let e = &q_mn.transpose() * &b;
    let psi = &e.mask_upper() + &e.mask_strict_lower().transpose();
    let dr = (&psi * r_nn).mask_upper();
    let dq = &b - &(q_mn * &psi);
    Ok(ThinDerivative { dq, dr, b, e, psi })
}
