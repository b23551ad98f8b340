use crate::derivative::{
    factored_derivative, full_q_derivative, thin_derivative, wy_derivative, FactoredDerivative, FullDerivative,
    ThinDerivative, WYDerivative,
};
use crate::error::Result;
use crate::householder::{assemble_q, qr_factor, CompactWY, FactoredQR};
use crate::matrix::{DenseMatrix, Shape};

/// A Householder QR factorisation with its compact WY form and explicit `Q_mm`.
///
/// This bundles what the derivative routines need so callers can go from
/// `A` and `∂A` to any derivative in one call.
#[derive(Debug, Clone, PartialEq)]
pub struct QrDecomposition {
    pub factored: FactoredQR,
    pub wy: CompactWY,
    pub q: DenseMatrix,
}

impl QrDecomposition {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        let factored = qr_factor(a)?;
        let wy = factored.to_compact_wy();
        let q = assemble_q(&wy);
        Ok(QrDecomposition { factored, wy, q })
    }

    pub fn shape(&self) -> Shape {
        self.factored.shape
    }

    /// `Q_mn`
    pub fn q_thin(&self) -> DenseMatrix {
        self.q.left_cols(self.shape().n)
    }

    /// `Q_mp`
    pub fn q_complement(&self) -> DenseMatrix {
        self.q.right_cols(self.shape().p)
    }

    /// `R_mn`
    pub fn r(&self) -> &DenseMatrix {
        &self.factored.r
    }

    pub fn r_nn(&self) -> DenseMatrix {
        self.factored.r_nn()
    }

    pub fn thin_derivative(&self, da: &DenseMatrix) -> Result<ThinDerivative> {
        thin_derivative(&self.q_thin(), &self.r_nn(), da)
    }

    pub fn wy_derivative(&self, da: &DenseMatrix) -> Result<WYDerivative> {
        wy_derivative(&self.wy, &self.thin_derivative(da)?)
    }

    pub fn factored_derivative(&self, da: &DenseMatrix) -> Result<FactoredDerivative> {
        factored_derivative(&self.factored, &self.thin_derivative(da)?)
    }

    pub fn full_derivative(&self, da: &DenseMatrix) -> Result<FullDerivative> {
        full_q_derivative(&self.wy, &self.q, &self.thin_derivative(da)?)
    }
}
