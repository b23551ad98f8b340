use crate::error::{dim_err, Result};
use crate::matrix::DenseMatrix;

/// Blocks of the skew-symmetric `Ω_mm` with `∂Q_mm = Q_mm·Ω_mm`.
///
/// `Ω_np = −Ω_pnᵀ` is implied. Both diagonal blocks are built from their
/// strictly lower parts and are therefore exactly skew-symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaBlocks {
    pub nn: DenseMatrix,
    pub pn: DenseMatrix,
    pub pp: DenseMatrix,
}

impl OmegaBlocks {
    pub fn np(&self) -> DenseMatrix {
        -&self.pn.transpose()
    }

    /// `Ω_mn = [Ω_nn; Ω_pn]`
    pub fn omega_mn(&self) -> DenseMatrix {
        self.nn.vstack(&self.pn).expect("Ω blocks are consistent")
    }

    /// The assembled `m × m` matrix.
    pub fn assemble(&self) -> DenseMatrix {
        let top = self.nn.hstack(&self.np()).expect("Ω blocks are consistent");
        let bottom = self.pn.hstack(&self.pp).expect("Ω blocks are consistent");
        top.vstack(&bottom).expect("Ω blocks are consistent")
    }
}

/// `Ω_nn = (L̂∘E) − (L̂∘E)ᵀ` and `Ω_pn = Q_mpᵀ·B`.
pub fn omega_thin(
    e_nn: &DenseMatrix,
    q_mp: &DenseMatrix,
    b_mn: &DenseMatrix,
) -> Result<(DenseMatrix, DenseMatrix)> {
    let n = e_nn.rows();
    let p = q_mp.cols();
    if !e_nn.is_square() || b_mn.dims() != (n + p, n) || q_mp.rows() != n + p {
        return dim_err(format!(
            "E {}x{}, Q_mp {}x{}, B {}x{} are inconsistent",
            e_nn.rows(),
            e_nn.cols(),
            q_mp.rows(),
            p,
            b_mn.rows(),
            b_mn.cols()
        ));
    }
    Ok((e_nn.skew_from_strict_lower(), &q_mp.transpose() * b_mn))
}

/// `Ω_pp = Ω_pn·Zᵀ − Z·Ω_pnᵀ − Z·Ω_nn·Zᵀ`, the block that depends on the
/// Householder construction of `Q_mp`.
pub fn omega_pp(omega_nn: &DenseMatrix, omega_pn: &DenseMatrix, z_pn: &DenseMatrix) -> Result<DenseMatrix> {
    let n = omega_nn.rows();
    let p = z_pn.rows();
    if p == 0 {
        return dim_err("Ω_pp needs p >= 1");
    }
    if !omega_nn.is_square() || omega_pn.dims() != (p, n) || z_pn.cols() != n {
        return dim_err(format!(
            "Ω_nn {}x{}, Ω_pn {}x{}, Z {}x{} are inconsistent",
            omega_nn.rows(),
            omega_nn.cols(),
            omega_pn.rows(),
            omega_pn.cols(),
            p,
            z_pn.cols()
        ));
    }
    let zt = z_pn.transpose();
    let cross = omega_pn * &zt;
    let raw = &(&cross - &cross.transpose()) - &(&(z_pn * omega_nn) * &zt);
    Ok(raw.skew_from_strict_lower())
}
