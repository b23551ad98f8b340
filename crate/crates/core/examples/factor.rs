//! Factorise a random tall matrix and inspect every representation of `Q`.
//!
//! Run with `cargo run --example factor`.

use qrderiv::random::{gaussian_matrix, seeded_rng};
use qrderiv::{assemble_q, DenseMatrix, QrDecomposition};

fn show(name: &str, a: &DenseMatrix) {
    println!("{name} ({}x{}):", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|x| format!("{x:>10.6}")).collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> qrderiv::Result<()> {
    let mut rng = seeded_rng(7);
    let a = gaussian_matrix(&mut rng, 5, 3);
    let qr = QrDecomposition::new(&a)?;
    show("A", &a);
    show("R", qr.r());
    show("Y (unit lower trapezoidal)", &qr.factored.y);
    println!("tau = {:?}", qr.factored.tau);
    show("T (compact WY)", &qr.wy.t);

    // Q is recovered three ways: stored, from I - Y T Y^T, and by applying
    // the reflectors one at a time.
    let mut by_reflectors = DenseMatrix::identity(5);
    for (k, &t) in qr.factored.tau.iter().enumerate().rev() {
        let v = DenseMatrix::column(&qr.factored.y.col_vec(k))?;
        let w = &v.transpose() * &by_reflectors;
        by_reflectors = &by_reflectors - &(&v * &w).scale(t);
    }
    let from_wy = assemble_q(&qr.wy);
    println!("|Q - I + YTY^T|_max  = {:.2e}", (&qr.q - &from_wy).max_abs());
    println!("|Q - H1 H2 H3|_max   = {:.2e}", (&qr.q - &by_reflectors).max_abs());
    println!("|QR - A|_max         = {:.2e}", (&(&qr.q * qr.r()) - &a).max_abs());
    let gram = &qr.q.transpose() * &qr.q;
    println!("|Q^T Q - I|_max      = {:.2e}", (&gram - &DenseMatrix::identity(5)).max_abs());
    Ok(())
}
