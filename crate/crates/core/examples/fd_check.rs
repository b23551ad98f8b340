//! Check every analytic derivative against central finite differences and
//! watch the error shrink quadratically with the step.
//!
//! Run with `cargo run --example fd_check`.

use qrderiv::fd::{check_all, FdConfig};
use qrderiv::random::{instance, seeded_rng};

fn main() -> qrderiv::Result<()> {
    let mut rng = seeded_rng(5);
    let (a, da) = instance(&mut rng, 5, 2);
    let report = check_all(&a, &da, &FdConfig::default())?;
    println!("{:<6} {:>12} {:>12} {:>12}", "name", "max_abs_err", "rel_err", "decay");
    for e in &report.entries {
        let decay = e.decay_ratio.map_or("-".to_string(), |r| format!("{r:.3}"));
        println!("{:<6} {:>12.3e} {:>12.3e} {:>12}", e.name, e.max_abs_err, e.rel_err, decay);
    }
    println!("passes at 1e-5: {}", report.passes(1e-5));

    let rich = check_all(&a, &da, &FdConfig { richardson: true, ..FdConfig::with_step(1e-3) })?;
    println!("with Richardson at h = 1e-3, worst rel err {:.2e}", rich.max_rel_err());
    Ok(())
}
