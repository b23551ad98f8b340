//! Householder QR factorisation and its derivatives.
//!
//! Given `A_mn` (`m ≥ n`, full column rank) and a direction `∂A_mn`, this crate
//! computes the derivatives of
//!
//! * the thin factors `Q_mn`, `R_nn`,
//! * the compact WY representation `Q_mm = I − Y·T·Yᵀ` (`∂Y`, `∂T`),
//! * the factored-form representation (`∂Y`, `∂τ`),
//! * the full `Q_mm`, including the `∂Q_mp` block that depends on `Q` being a
//!   product of Householder reflections.
//!
//! Every formula can be checked against central finite differences with
//! [`fd::check_all`].
//!
//! ```
//! use qrderiv::{DenseMatrix, QrDecomposition};
//!
//! let a = DenseMatrix::column(&[3.0, 4.0]).unwrap();
//! let da = DenseMatrix::column(&[1.0, 0.0]).unwrap();
//! let qr = QrDecomposition::new(&a).unwrap();
//! let d = qr.full_derivative(&da).unwrap();
//! assert!((d.dq_mp().get(0, 0) + 0.096).abs() < 1e-15);
//! ```

pub mod cli;
pub mod decomposition;
pub mod derivative;
pub mod error;
pub mod fd;
pub mod householder;
pub mod matrix;
pub mod random;
pub mod textio;

pub use decomposition::QrDecomposition;
pub use error::{QrError, Result};
pub use householder::{
    assemble_q, assemble_q_thin, build_t_forward, householder_vector, qr_factor, t_inverse_from_y, CompactWY,
    FactoredQR, HouseholderStep,
};
pub use matrix::{partition, solve_unit_lower, solve_upper, DenseMatrix, Partition, Shape, Side};
