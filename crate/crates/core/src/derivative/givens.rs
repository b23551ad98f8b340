//! The 2×1 problem has two orthogonal completions of `Q_mn`: the Householder
//! reflection `Q^h` and the rotation `Q^g = [Q_mn | −Q_mp^h]`. The `Z`-form of
//! `∂Q_mp` is only valid for the former.

use crate::derivative::thin::thin_derivative;
use crate::error::{QrError, Result};
use crate::householder::{assemble_q, qr_factor};
use crate::matrix::{solve_dense, DenseMatrix, Side};

/// Formula output versus the true derivative for both completions.
#[derive(Debug, Clone, PartialEq)]
pub struct GivensReport {
    pub householder_formula: DenseMatrix,
    pub householder_true: DenseMatrix,
    pub givens_formula: DenseMatrix,
    pub givens_true: DenseMatrix,
    pub householder_rel_err: f64,
    pub givens_rel_err: f64,
    /// The formula disagrees with the true `∂Q_mp^g`.
    pub mismatch: bool,
}

fn rel_err(formula: &DenseMatrix, truth: &DenseMatrix) -> f64 {
    let diff = (formula - truth).frobenius_norm();
    let scale = truth.frobenius_norm();
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// `∂Q_mp` from `∂Q_mn` and an explicit `Q_mm`, with `Z = Q_pn·(Q_nn − I)⁻¹`.
fn dq_mp_from_q(q_mm: &DenseMatrix, dq_mn: &DenseMatrix) -> Result<DenseMatrix> {
    let q_nn_minus_i = &q_mm.block(0, 0, 1, 1) - &DenseMatrix::identity(1);
    let z = solve_dense(&q_nn_minus_i, &q_mm.block(1, 0, 1, 1), Side::Right)?;
    let coupling = &q_mm.left_cols(1) + &(&q_mm.right_cols(1) * &z);
    let mismatch = &dq_mn.bottom_rows(1) - &(&z * &dq_mn.top_rows(1));
    Ok(&(dq_mn * &z.transpose()) - &(&coupling * &mismatch.transpose()))
}

pub fn givens_2x1_counterexample(a: [f64; 2], da: [f64; 2]) -> Result<GivensReport> {
    let [a11, a21] = a;
    let [da11, da21] = da;
    let r = a11.hypot(a21);
    if r == 0.0 {
        return Err(QrError::Degeneracy("a has zero norm".into()));
    }
    let amat = DenseMatrix::column(&a)?;
    let f = qr_factor(&amat)?;
    if f.tau[0] == 0.0 {
        return Err(QrError::Degeneracy("Householder step has tau = 0".into()));
    }
    let q_h = assemble_q(&f.to_compact_wy());
    let q_g = q_h.left_cols(1).hstack(&(-&q_h.right_cols(1)))?;

    // closed-form derivatives of the two completions
    let k = (a11 * da21 - a21 * da11) / (r * r * r);
    let householder_true = DenseMatrix::column(&[k * a11, k * a21])?;
    let givens_true = -&householder_true;

    let thin = thin_derivative(&q_h.left_cols(1), &f.r_nn(), &DenseMatrix::column(&da)?)?;
    let householder_formula = dq_mp_from_q(&q_h, &thin.dq)?;
    let givens_formula = dq_mp_from_q(&q_g, &thin.dq)?;

    let householder_rel_err = rel_err(&householder_formula, &householder_true);
    let givens_rel_err = rel_err(&givens_formula, &givens_true);
    let diff = (&givens_formula - &givens_true).frobenius_norm();
    let scale = givens_true.frobenius_norm().max(givens_formula.frobenius_norm());
    // rounding floor for a derivative of size ~‖da‖/r
    let floor = 1e-14 * da11.hypot(da21) / r;
    let mismatch = diff > (1e-10 * scale).max(floor);

    Ok(GivensReport {
        householder_formula,
        householder_true,
        givens_formula,
        givens_true,
        householder_rel_err,
        givens_rel_err,
        mismatch,
    })
}
