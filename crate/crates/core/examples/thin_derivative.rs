//! Derivatives of the thin factors `Q_mn`, `R_nn` and the skew matrix `Ω`.
//!
//! Run with `cargo run --example thin_derivative`.

use qrderiv::fd::{directional_fd, qr_quantity, FdConfig, Quantity};
use qrderiv::{DenseMatrix, QrDecomposition};

fn main() -> qrderiv::Result<()> {
    let a = DenseMatrix::column(&[3.0, 4.0])?;
    let da = DenseMatrix::column(&[1.0, 0.0])?;
    let qr = QrDecomposition::new(&a)?;
    let d = qr.thin_derivative(&da)?;
    println!("A = [3; 4], dA = [1; 0]");
    println!("dQ_mn = {:?}", d.dq.col_vec(0));
    println!("dR_nn = {}", d.dr.get(0, 0));

    // A larger case, compared against central differences.
    let a = DenseMatrix::from_rows(&[[2.0, -1.0, 0.5], [1.0, 3.0, -2.0], [0.0, 1.0, 4.0], [-1.0, 0.5, 1.0]])?;
    let da = DenseMatrix::from_fn(4, 3, |i, j| ((i + 2 * j) as f64).sin());
    let qr = QrDecomposition::new(&a)?;
    let d = qr.thin_derivative(&da)?;
    let cfg = FdConfig::default();
    let fd_q = directional_fd(|x| qr_quantity(x, Quantity::QThin), &a, &da, &cfg)?;
    let fd_r = directional_fd(|x| qr_quantity(x, Quantity::R), &a, &da, &cfg)?;
    println!("4x3: |dQ - fd|_max = {:.2e}", (&d.dq - &fd_q).max_abs());
    println!("4x3: |dR - fd|_max = {:.2e}", (&d.dr - &fd_r.top_rows(3)).max_abs());
    println!("dR upper triangular: {}", d.dr.is_upper_triangular());

    let full = qr.full_derivative(&da)?;
    let omega = full.omega.assemble();
    println!("|Ω + Ωᵀ|_max = {:.2e}", omega.skew_residual());
    println!("|Q Ω - dQ|_max = {:.2e}", (&(&qr.q * &omega) - &full.dq).max_abs());
    Ok(())
}
