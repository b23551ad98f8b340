use proptest::prelude::*;
use qrderiv::matrix::{relative_difference, solve_dense};
use qrderiv::random::{gaussian_matrix, seeded_rng, unit_lower_matrix, upper_matrix};
use qrderiv::textio::{format_matrix, parse_matrix, read_matrix, write_matrix};
use qrderiv::{partition, solve_unit_lower, solve_upper, DenseMatrix, Partition, QrError, Shape, Side};

#[test]
fn partition_square_and_tall() {
    let a = DenseMatrix::from_fn(4, 2, |i, j| (10 * i + j) as f64);
    match partition(&a, Shape::of(&a).unwrap()).unwrap() {
        Partition::Columns { nn, pn } => {
            assert_eq!(nn, a.top_rows(2));
            assert_eq!(pn, a.bottom_rows(2));
        }
        other => panic!("{other:?}"),
    }
    let sq = DenseMatrix::from_fn(5, 5, |i, j| (i * 5 + j) as f64);
    let parts = partition(&sq, Shape::new(5, 3).unwrap()).unwrap();
    match &parts {
        Partition::Full { nn, np, pn, pp } => {
            assert_eq!(nn.dims(), (3, 3));
            assert_eq!(np.dims(), (3, 2));
            assert_eq!(pn.dims(), (2, 3));
            assert_eq!(pp.dims(), (2, 2));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(parts.reassemble(), sq);
    assert!(matches!(partition(&a, Shape::new(5, 2).unwrap()), Err(QrError::Dimension(_))));
    assert!(matches!(Shape::new(2, 3), Err(QrError::Dimension(_))));
}

#[test]
fn triangular_residuals_up_to_fifty() {
    let mut rng = seeded_rng(51);
    for k in [1, 2, 5, 13, 30, 50] {
        let l = unit_lower_matrix(&mut rng, k);
        let u = upper_matrix(&mut rng, k);
        let b = gaussian_matrix(&mut rng, k, 4);
        let bt = b.transpose();

        let x = solve_unit_lower(&l, &b, Side::Left).unwrap();
        assert!(relative_difference(&(&l * &x), &b) <= 1e-12, "L·X, k = {k}");
        let x = solve_unit_lower(&l, &bt, Side::Right).unwrap();
        assert!(relative_difference(&(&x * &l), &bt) <= 1e-12, "X·L, k = {k}");
        let x = solve_upper(&u, &b, Side::Left).unwrap();
        assert!(relative_difference(&(&u * &x), &b) <= 1e-12, "U·X, k = {k}");
        let x = solve_upper(&u, &bt, Side::Right).unwrap();
        assert!(relative_difference(&(&x * &u), &bt) <= 1e-12, "X·U, k = {k}");
    }
}

#[test]
fn unit_lower_ignores_diagonal_and_upper_part() {
    let l = DenseMatrix::from_rows(&[[7.0, 9.0], [2.0, -3.0]]).unwrap();
    let b = DenseMatrix::column(&[1.0, 4.0]).unwrap();
    let x = solve_unit_lower(&l, &b, Side::Left).unwrap();
    assert_eq!(x, DenseMatrix::column(&[1.0, 2.0]).unwrap());
}

#[test]
fn singular_upper_is_reported() {
    let u = DenseMatrix::from_rows(&[[2.0, 1.0], [0.0, 0.0]]).unwrap();
    let err = solve_upper(&u, &DenseMatrix::identity(2), Side::Left).unwrap_err();
    assert!(matches!(err, QrError::SingularTriangular { index: 1, .. }));
}

#[test]
fn dense_solve_with_pivoting() {
    // the leading zero forces a row swap
    let a = DenseMatrix::from_rows(&[[0.0, 2.0], [3.0, 1.0]]).unwrap();
    let b = DenseMatrix::from_rows(&[[4.0], [5.0]]).unwrap();
    let x = solve_dense(&a, &b, Side::Left).unwrap();
    assert!((&(&a * &x) - &b).max_abs() < 1e-15);
    let y = solve_dense(&a, &b.transpose(), Side::Right).unwrap();
    assert!((&(&y * &a) - &b.transpose()).max_abs() < 1e-15);
}

#[test]
fn non_finite_entries_are_rejected() {
    let err = DenseMatrix::new(1, 2, vec![1.0, f64::NAN]).unwrap_err();
    assert!(matches!(err, QrError::NonFinite { row: 0, col: 1 }));
    assert!(matches!(DenseMatrix::new(2, 2, vec![1.0; 3]), Err(QrError::Dimension(_))));
}

#[test]
fn text_format_examples() {
    let a = parse_matrix("2 1\n3\n4\n").unwrap();
    assert_eq!(a, DenseMatrix::column(&[3.0, 4.0]).unwrap());
    let b = parse_matrix("\n2 2\n  1e-3 -2.5E2 \n0 +7\n\n").unwrap();
    assert_eq!(b.as_slice(), &[1e-3, -250.0, 0.0, 7.0]);

    for bad in ["", "2\n1\n2", "2 1\n1", "1 2\n1", "1 1\nabc", "1 1\n1\n2", "0 1\n", "1 1\ninf"] {
        assert!(matches!(parse_matrix(bad), Err(QrError::Parse(_))), "{bad:?}");
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    let a = DenseMatrix::from_rows(&[[0.1, -1.0 / 3.0], [5e-300, 1.7976931348623157e308]]).unwrap();
    write_matrix(&path, &a).unwrap();
    assert_eq!(read_matrix(&path).unwrap(), a);
    let missing = read_matrix(&dir.path().join("absent.txt")).unwrap_err();
    assert!(matches!(missing, QrError::Parse(_)));
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![any::<f64>().prop_filter("finite", |v| v.is_finite()), -1e3f64..1e3]
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(finite(), 36)) {
        let a = DenseMatrix::from_fn(rows, cols, |i, j| seed[i * 6 + j]);
        let back = parse_matrix(&format_matrix(&a)).unwrap();
        prop_assert_eq!(back.as_slice(), a.as_slice());
    }

    #[test]
    fn transpose_reverses_products(seed in any::<u64>(), m in 1usize..7, k in 1usize..7, n in 1usize..7) {
        let mut rng = seeded_rng(seed);
        let a = gaussian_matrix(&mut rng, m, k);
        let b = gaussian_matrix(&mut rng, k, n);
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }
}
