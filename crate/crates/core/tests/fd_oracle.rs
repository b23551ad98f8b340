use qrderiv::fd::{check_all, directional_fd, extended, qr_quantity, FdConfig, Probe, Quantity, MIN_STEP};
use qrderiv::random::{instance, seeded_rng};
use qrderiv::{DenseMatrix, QrDecomposition, QrError};
use rand::Rng;

fn col(v: &[f64]) -> DenseMatrix {
    DenseMatrix::column(v).unwrap()
}

#[test]
fn identity_map_returns_the_direction() {
    let a = DenseMatrix::from_rows(&[[1.0, -2.0], [0.5, 4.0], [3.0, 0.0]]).unwrap();
    let da = DenseMatrix::from_rows(&[[0.25, 1.0], [-1.0, 2.0], [0.0, 0.5]]).unwrap();
    let d = directional_fd(|x| Ok(Probe::plain(x.clone())), &a, &da, &FdConfig::default()).unwrap();
    assert!((&d - &da).max_abs() < 1e-9);
}

#[test]
fn square_of_identity() {
    let i = DenseMatrix::identity(3);
    let d = directional_fd(|x| Ok(Probe::plain(x * x)), &i, &i, &FdConfig::default()).unwrap();
    assert!((&d - &i.scale(2.0)).max_abs() < 1e-10);
}

#[test]
fn golden_r_derivative() {
    let d = directional_fd(|x| qr_quantity(x, Quantity::R), &col(&[3.0, 4.0]), &col(&[1.0, 0.0]), &FdConfig::default())
        .unwrap();
    assert!((&d - &col(&[0.6, 0.0])).max_abs() < 1e-9);
}

#[test]
fn richardson_removes_the_second_order_term() {
    // f(X) = X³ elementwise: the central error is h²·6/6 = h² per unit entry
    let a = col(&[1.0, 2.0]);
    let da = col(&[1.0, 1.0]);
    let cube = |x: &DenseMatrix| Ok(Probe::plain(x.map(|v| v * v * v)));
    let exact = col(&[3.0, 12.0]);
    let plain = directional_fd(cube, &a, &da, &FdConfig::with_step(1e-2)).unwrap();
    let rich = directional_fd(cube, &a, &da, &FdConfig { richardson: true, ..FdConfig::with_step(1e-2) }).unwrap();
    assert!(((&plain - &exact).max_abs() - 1e-4).abs() < 1e-10);
    assert!((&rich - &exact).max_abs() < 1e-11);
}

#[test]
fn invalid_steps_are_config_errors() {
    let a = col(&[1.0]);
    for h in [0.0, -1e-6, MIN_STEP / 2.0, f64::NAN, f64::INFINITY] {
        let err = directional_fd(|x| Ok(Probe::plain(x.clone())), &a, &a, &FdConfig::with_step(h)).unwrap_err();
        assert!(matches!(err, QrError::Config(_)), "h = {h}");
    }
    assert!(directional_fd(|x| Ok(Probe::plain(x.clone())), &a, &a, &FdConfig::with_step(MIN_STEP)).is_ok());
}

#[test]
fn mismatched_direction_is_rejected() {
    let err = directional_fd(|x| Ok(Probe::plain(x.clone())), &col(&[1.0, 2.0]), &col(&[1.0]), &FdConfig::default())
        .unwrap_err();
    assert!(matches!(err, QrError::Dimension(_)));
}

#[test]
fn branch_change_is_detected() {
    // the tail crosses zero under a positive pivot, where v has a pole
    let a = col(&[1.0, 1e-7]);
    let da = col(&[0.0, 1.0]);
    let err = directional_fd(|x| qr_quantity(x, Quantity::Y), &a, &da, &FdConfig::default()).unwrap_err();
    assert!(matches!(err, QrError::BranchChange));
}

#[test]
fn last_square_pivot_crossing_zero_is_a_branch_change() {
    // one side keeps the identity reflector, the other flips the sign
    let a = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 1e-7]]).unwrap();
    let da = DenseMatrix::from_rows(&[[0.0, 0.0], [0.0, 1.0]]).unwrap();
    let err = directional_fd(|x| qr_quantity(x, Quantity::R), &a, &da, &FdConfig::default()).unwrap_err();
    assert!(matches!(err, QrError::BranchChange));
    let err = extended::central_difference(&a, &da, 1e-6, Quantity::R).unwrap_err();
    assert!(matches!(err, QrError::BranchChange));
}

#[test]
fn tail_crossing_below_a_negative_pivot_is_smooth() {
    let a = col(&[-1.0, 1e-7]);
    let da = col(&[0.0, 1.0]);
    let d = directional_fd(|x| qr_quantity(x, Quantity::Y), &a, &da, &FdConfig::default()).unwrap();
    let analytic = QrDecomposition::new(&a).unwrap().wy_derivative(&da).unwrap().dy;
    assert!((&d - &analytic).max_abs() < 1e-6);
}

#[test]
fn pivot_sign_change_is_not_a_branch_change() {
    // the reflector stays continuous when only the pivot changes sign
    let a = col(&[1e-7, 1.0]);
    let da = col(&[1.0, 0.0]);
    let d = directional_fd(|x| qr_quantity(x, Quantity::Y), &a, &da, &FdConfig::default()).unwrap();
    let analytic = QrDecomposition::new(&a).unwrap().wy_derivative(&da).unwrap().dy;
    assert!((&d - &analytic).max_abs() < 1e-6);
}

#[test]
fn golden_check_report() {
    let rep = check_all(&col(&[3.0, 4.0]), &col(&[1.0, 0.0]), &FdConfig::default()).unwrap();
    assert_eq!(rep.entries.len(), 6);
    let names: Vec<_> = rep.entries.iter().map(|e| e.name).collect();
    assert_eq!(names, ["R", "Q_mn", "Q_mp", "Y", "T", "tau"]);
    assert!(rep.passes(1e-6), "{rep:?}");
    for e in &rep.entries {
        let ratio = e.decay_ratio.unwrap();
        assert!((ratio - 100.0).abs() < 1.0, "{} {ratio}", e.name);
    }
}

#[test]
fn zero_direction_report() {
    let mut rng = seeded_rng(41);
    let (a, _) = instance(&mut rng, 5, 3);
    let rep = check_all(&a, &DenseMatrix::zeros(5, 3), &FdConfig::default()).unwrap();
    for e in &rep.entries {
        assert_eq!(e.max_abs_err, 0.0);
        assert_eq!(e.rel_err, 0.0);
        assert_eq!(e.decay_ratio, None);
    }
}

#[test]
fn random_suite_passes_at_default_tolerance() {
    let mut rng = seeded_rng(42);
    let mut done = 0;
    while done < 20 {
        let m = rng.random_range(2..=12);
        let n = rng.random_range(1..=m);
        let (a, da) = instance(&mut rng, m, n);
        if QrDecomposition::new(&a).unwrap().factored.zero_tau().is_some() {
            continue;
        }
        let rep = check_all(&a, &da, &FdConfig::default()).unwrap();
        assert!(rep.passes(1e-5), "{m}x{n}: {rep:?}");
        assert!(rep.entry(Quantity::QComplement).is_some());
        done += 1;
    }
}

#[test]
fn central_difference_converges_at_second_order() {
    let mut rng = seeded_rng(43);
    let (a, da) = instance(&mut rng, 6, 3);
    let full = QrDecomposition::new(&a).unwrap().full_derivative(&da).unwrap();
    let exact = [
        (Quantity::R, full.dr.clone()),
        (Quantity::QThin, full.dq_mn()),
        (Quantity::QComplement, full.dq_mp()),
        (Quantity::Y, full.wy.dy.clone()),
    ];
    for (q, d) in exact {
        for h in [1e-3, 1e-4] {
            let err = |step: f64| {
                let fd = directional_fd(|x| qr_quantity(x, q), &a, &da, &FdConfig::with_step(step)).unwrap();
                (&fd - &d).frobenius_norm()
            };
            let ratio = err(h) / err(h / 2.0);
            assert!((3.0..=5.0).contains(&ratio), "{} h={h}: ratio {ratio}", q.name());
        }
    }
}

#[test]
fn extended_differences_agree_with_plain_ones_where_both_are_accurate() {
    let mut rng = seeded_rng(44);
    let (a, da) = instance(&mut rng, 5, 2);
    for q in Quantity::ALL {
        let plain = directional_fd(|x| qr_quantity(x, q), &a, &da, &FdConfig::with_step(1e-4)).unwrap();
        let ext = extended::central_difference(&a, &da, 1e-4, q).unwrap();
        assert!((&plain - &ext).max_abs() < 1e-10, "{}", q.name());
    }
}
