//! For a 2x1 input, Householder and Givens give the same `Q_mn` and `R`
//! but different complements. The Householder formula for `∂Q_mp` is
//! exact for the reflector and wrong for the rotation.
//!
//! Run with `cargo run --example givens_counterexample`.

use qrderiv::derivative::givens_2x1_counterexample;

fn main() -> qrderiv::Result<()> {
    for (a, da) in [([3.0, 4.0], [1.0, 0.0]), ([1.0, 2.0], [0.3, -0.7]), ([-2.0, 0.5], [0.0, 1.0])] {
        let rep = givens_2x1_counterexample(a, da)?;
        println!("a = {a:?}, da = {da:?}");
        println!(
            "  householder: formula {:?} true {:?} rel err {:.2e}",
            rep.householder_formula.col_vec(0),
            rep.householder_true.col_vec(0),
            rep.householder_rel_err
        );
        println!(
            "  givens:      formula {:?} true {:?} rel err {:.3}",
            rep.givens_formula.col_vec(0),
            rep.givens_true.col_vec(0),
            rep.givens_rel_err
        );
        println!("  mismatch flagged: {}", rep.mismatch);
    }
    Ok(())
}
