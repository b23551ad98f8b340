//! Derivatives of the compact WY form `Q = I − Y·T·Yᵀ` and of the
//! factored form `(Y, τ)`.
//!
//! Run with `cargo run --example compact_wy_derivative`.

use qrderiv::fd::{directional_fd, qr_quantity, FdConfig, Quantity};
use qrderiv::random::{instance, seeded_rng};
use qrderiv::QrDecomposition;

fn main() -> qrderiv::Result<()> {
    let mut rng = seeded_rng(11);
    let (a, da) = instance(&mut rng, 6, 3);
    let qr = QrDecomposition::new(&a)?;
    let wy = qr.wy_derivative(&da)?;
    let factored = qr.factored_derivative(&da)?;

    println!("tau  = {:?}", qr.factored.tau);
    println!("dtau = {:?}", wy.dtau);
    println!("dtau via factored form = {:?}", factored.dtau);
    println!("dY strictly lower: {}", wy.dy.is_strictly_lower_triangular());
    println!("dT upper: {}", wy.dt.is_upper_triangular());
    println!("|dY(wy) - dY(factored)|_max = {:.2e}", (&wy.dy - &factored.dy).max_abs());

    let cfg = FdConfig::default();
    for (q, analytic) in [(Quantity::Y, &wy.dy), (Quantity::T, &wy.dt)] {
        let fd = directional_fd(|x| qr_quantity(x, q), &a, &da, &cfg)?;
        println!("{:>3}: |analytic - fd|_max = {:.2e}", q.name(), (analytic - &fd).max_abs());
    }
    Ok(())
}
