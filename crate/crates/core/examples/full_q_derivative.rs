//! The complement block `∂Q_mp`, which only exists because `Q` is built
//! from Householder reflections, computed three equivalent ways.
//!
//! Run with `cargo run --example full_q_derivative`.

use qrderiv::derivative::dq_mp_forms;
use qrderiv::fd::{directional_fd, qr_quantity, FdConfig, Quantity};
use qrderiv::random::{instance, seeded_rng};
use qrderiv::QrDecomposition;

fn main() -> qrderiv::Result<()> {
    let mut rng = seeded_rng(3);
    let (a, da) = instance(&mut rng, 7, 3);
    let qr = QrDecomposition::new(&a)?;
    let thin = qr.thin_derivative(&da)?;
    let wyd = qr.wy_derivative(&da)?;
    let full = qr.full_derivative(&da)?;

    let forms = dq_mp_forms(&qr.wy, &qr.q, &thin, &wyd)?;
    println!("product rule vs Y/S form vs Z form: {:.2e}", forms.max_discrepancy());

    let fd = directional_fd(|x| qr_quantity(x, Quantity::QComplement), &a, &da, &FdConfig::default())?;
    println!("|dQ_mp - fd|_max = {:.2e}", (&full.dq_mp() - &fd).max_abs());

    let omega = &full.omega;
    println!("Omega_pp ({}x{}), skew residual {:.2e}:", omega.pp.rows(), omega.pp.cols(), omega.pp.skew_residual());
    for i in 0..omega.pp.rows() {
        let row: Vec<String> = omega.pp.row(i).iter().map(|x| format!("{x:>9.5}")).collect();
        println!("  {}", row.join(" "));
    }
    // Q_mp^T dQ_mp must reproduce the same block.
    let direct = &qr.q_complement().transpose() * &full.dq_mp();
    println!("|Q_mp^T dQ_mp - Omega_pp|_max = {:.2e}", (&direct - &omega.pp).max_abs());
    Ok(())
}
