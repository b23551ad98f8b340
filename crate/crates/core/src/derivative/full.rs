//! Derivative of the full factorisation `A_mn = Q_mm·R_mn` when `Q_mm` is a
//! product of Householder reflections.
//!
//! The production path for `∂Q_mp` is
//!
//! ```text
//! ∂Q_mp = ∂Q_mn·Zᵀ − (Q_mn + Q_mp·Z)·(∂Q_pn − Z·∂Q_nn)ᵀ
//! ```
//!
//! [`dq_mp_forms`] also evaluates the raw product rule over `I − Y·T·Y_pnᵀ`
//! and the `Y`/`S` form for cross-checking.

use crate::derivative::omega::{omega_pp, omega_thin, OmegaBlocks};
use crate::derivative::thin::ThinDerivative;
use crate::derivative::wy::{wy_derivative, SOperator, WYDerivative};
use crate::error::{dim_err, Result};
use crate::householder::CompactWY;
use crate::matrix::{relative_difference, DenseMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct FullDerivative {
    /// `[∂Q_mn | ∂Q_mp]`
    pub dq: DenseMatrix,
    /// `[∂R_nn; 0]`
    pub dr: DenseMatrix,
    pub wy: WYDerivative,
    pub omega: OmegaBlocks,
}

impl FullDerivative {
    pub fn dq_mn(&self) -> DenseMatrix {
        self.dq.left_cols(self.wy.dy.cols())
    }

    pub fn dq_mp(&self) -> DenseMatrix {
        self.dq.right_cols(self.dq.cols() - self.wy.dy.cols())
    }
}

fn check_q(wy: &CompactWY, q_mm: &DenseMatrix, thin: &ThinDerivative) -> Result<()> {
    let m = wy.shape.m;
    if q_mm.dims() != (m, m) {
        return dim_err(format!("Q is {}x{}, expected {m}x{m}", q_mm.rows(), q_mm.cols()));
    }
    if thin.dq.dims() != wy.y.dims() {
        return dim_err("thin derivative does not match the WY shape");
    }
    Ok(())
}

fn z_form(q_mm: &DenseMatrix, z: &DenseMatrix, dq_mn: &DenseMatrix) -> DenseMatrix {
    let n = dq_mn.cols();
    let p = z.rows();
    let q_mn = q_mm.left_cols(n);
    let q_mp = q_mm.right_cols(p);
    let coupling = &q_mn + &(&q_mp * z);
    &(dq_mn * &z.transpose()) - &(&coupling * &mismatch(z, dq_mn).transpose())
}

/// `∂Q_pn − Z·∂Q_nn`
fn mismatch(z: &DenseMatrix, dq_mn: &DenseMatrix) -> DenseMatrix {
    let n = dq_mn.cols();
    &dq_mn.bottom_rows(z.rows()) - &(z * &dq_mn.top_rows(n))
}

/// Derivative of `Q_mm` and `R_mn`, with the WY-level derivatives and the
/// `Ω` blocks that reproduce `∂Q_mm = Q_mm·Ω_mm`.
pub fn full_q_derivative(wy: &CompactWY, q_mm: &DenseMatrix, thin: &ThinDerivative) -> Result<FullDerivative> {
    check_q(wy, q_mm, thin)?;
    let shape = wy.shape;
    let wyd = wy_derivative(wy, thin)?;

    let dq_mp = z_form(q_mm, &wyd.z, &thin.dq);
    let dq = thin.dq.hstack(&dq_mp)?;
    let dr = thin.dr.vstack(&DenseMatrix::zeros(shape.p, shape.n))?;

    let (nn, pn) = omega_thin(&thin.e, &q_mm.right_cols(shape.p), &thin.b)?;
    let pp = if shape.p > 0 {
        omega_pp(&nn, &pn, &wyd.z)?
    } else {
        DenseMatrix::zeros(0, 0)
    };

    Ok(FullDerivative { dq, dr, wy: wyd, omega: OmegaBlocks { nn, pn, pp } })
}

/// The three closed forms of `∂Q_mp`.
#[derive(Debug, Clone, PartialEq)]
pub struct DqMpForms {
    /// `−∂Y·T·Y_pnᵀ − Y·∂T·Y_pnᵀ − Y·T·∂Y_pnᵀ`
    pub product_rule: DenseMatrix,
    /// `∂Q_mn·Zᵀ − Y·T·S⁻ᵀ·(∂Q_pn − Z·∂Q_nn)ᵀ`
    pub ys_form: DenseMatrix,
    /// `∂Q_mn·Zᵀ − (Q_mn + Q_mp·Z)·(∂Q_pn − Z·∂Q_nn)ᵀ`
    pub z_form: DenseMatrix,
}

impl DqMpForms {
    /// Largest pairwise relative Frobenius difference.
    pub fn max_discrepancy(&self) -> f64 {
        let pairs = [
            (&self.product_rule, &self.ys_form),
            (&self.product_rule, &self.z_form),
            (&self.ys_form, &self.z_form),
        ];
        pairs
            .iter()
            .map(|(a, b)| relative_difference(a, b))
            .fold(0.0, f64::max)
    }
}

/// Evaluates every `∂Q_mp` formula from the same WY derivative.
pub fn dq_mp_forms(
    wy: &CompactWY,
    q_mm: &DenseMatrix,
    thin: &ThinDerivative,
    wyd: &WYDerivative,
) -> Result<DqMpForms> {
    check_q(wy, q_mm, thin)?;
    let y_pn_t = wy.y_pn().transpose();
    let dy_pn_t = wyd.dy.bottom_rows(wy.shape.p).transpose();
    let yt = &wy.y * &wy.t;
    let product_rule = -&(&(&(&(&wyd.dy * &wy.t) * &y_pn_t) + &(&(&wy.y * &wyd.dt) * &y_pn_t))
        + &(&yt * &dy_pn_t));

    let s_op = SOperator::from_stored_t(wy.y_nn(), &wy.t);
    let yts = s_op.s_inv_t_right(&yt)?;
    let ys_form = &(&thin.dq * &wyd.z.transpose()) - &(&yts * &mismatch(&wyd.z, &thin.dq).transpose());

    let z_form = z_form(q_mm, &wyd.z, &thin.dq);
    Ok(DqMpForms { product_rule, ys_form, z_form })
}

/// `∂Q_mm = −∂Y·T·Yᵀ − Y·∂T·Yᵀ − Y·T·∂Yᵀ`, straight from the WY derivative.
pub fn dq_mm_product_rule(wy: &CompactWY, wyd: &WYDerivative) -> DenseMatrix {
    let yt = wy.y.transpose();
    let a = &(&wyd.dy * &wy.t) * &yt;
    let b = &(&wy.y * &wyd.dt) * &yt;
    let c = &(&wy.y * &wy.t) * &wyd.dy.transpose();
    -&(&(&a + &b) + &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivative::thin::thin_derivative;
    use crate::householder::{assemble_q, qr_factor};

    fn setup(a: &DenseMatrix, da: &DenseMatrix) -> (CompactWY, DenseMatrix, ThinDerivative) {
        let f = qr_factor(a).unwrap();
        let wy = f.to_compact_wy();
        let q = assemble_q(&wy);
        let thin = thin_derivative(&q.left_cols(a.cols()), &f.r_nn(), da).unwrap();
        (wy, q, thin)
    }

    #[test]
    fn two_by_one_golden() {
        let a = DenseMatrix::column(&[3.0, 4.0]).unwrap();
        let da = DenseMatrix::column(&[1.0, 0.0]).unwrap();
        let (wy, q, thin) = setup(&a, &da);
        let full = full_q_derivative(&wy, &q, &thin).unwrap();
        let expected = DenseMatrix::from_rows(&[[0.128, -0.096], [-0.096, -0.128]]).unwrap();
        assert!((&full.dq - &expected).max_abs() < 1e-15, "{:?}", full.dq);
        assert_eq!(full.dr.get(1, 0), 0.0);
        assert!((full.dr.get(0, 0) - 0.6).abs() < 1e-15);
        assert_eq!(full.omega.nn, DenseMatrix::zeros(1, 1));
        assert!((full.omega.pn.get(0, 0) - 0.16).abs() < 1e-15);
        assert_eq!(full.omega.pp, DenseMatrix::zeros(1, 1));

        let forms = dq_mp_forms(&wy, &q, &thin, &full.wy).unwrap();
        assert!(forms.max_discrepancy() < 1e-14, "{forms:?}");
    }

    #[test]
    fn square_case_has_no_mp_block() {
        let a = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 3.0]]).unwrap();
        let da = DenseMatrix::from_rows(&[[0.5, -1.0], [1.25, 2.0]]).unwrap();
        let (wy, q, thin) = setup(&a, &da);
        let full = full_q_derivative(&wy, &q, &thin).unwrap();
        assert_eq!(full.dq, thin.dq);
        assert_eq!(full.dq_mp().dims(), (2, 0));
        assert_eq!(full.omega.pp.dims(), (0, 0));
        assert!(relative_difference(&dq_mm_product_rule(&wy, &full.wy), &full.dq) < 1e-13);
    }
}
