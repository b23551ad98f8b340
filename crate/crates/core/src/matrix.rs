//! Dense real matrices, the `U` / strictly-lower masks, block partitions and
//! triangular solves.
//!
//! Matrices are values: every operation returns a new matrix. Blocks with a
//! zero dimension (for example the `p`-blocks of a square problem) are legal
//! values, but matrices read from user input must be at least 1×1.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{dim_err, QrError, Result};

/// Diagonal entries with magnitude below this are treated as exact breakdown.
pub const SINGULAR_DIAGONAL_THRESHOLD: f64 = 1e-300;

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, rejecting NaN and infinities.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return dim_err(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            ));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(QrError::NonFinite {
                row: k / cols.max(1),
                col: k % cols.max(1),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return dim_err(format!("row {i} has {} entries, expected {ncols}", r.len()));
            }
            data.extend_from_slice(r);
        }
        DenseMatrix::new(nrows, ncols, data)
    }

    /// Column vector.
    pub fn column(entries: &[f64]) -> Result<Self> {
        DenseMatrix::new(entries.len(), 1, entries.to_vec())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|x| s * x)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc + x * x).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Copy of the `nrows × ncols` block whose top-left entry is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        assert!(
            r0 + nrows <= self.rows && c0 + ncols <= self.cols,
            "block ({r0},{c0})+{nrows}x{ncols} out of range for {}x{}",
            self.rows,
            self.cols
        );
        Self::from_fn(nrows, ncols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn top_rows(&self, k: usize) -> Self {
        self.block(0, 0, k, self.cols)
    }

    pub fn bottom_rows(&self, k: usize) -> Self {
        self.block(self.rows - k, 0, k, self.cols)
    }

    pub fn left_cols(&self, k: usize) -> Self {
        self.block(0, 0, self.rows, k)
    }

    pub fn right_cols(&self, k: usize) -> Self {
        self.block(0, self.cols - k, self.rows, k)
    }

    pub fn hstack(&self, other: &DenseMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return dim_err(format!("hstack of {} and {} rows", self.rows, other.rows));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, other: &DenseMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return dim_err(format!("vstack of {} and {} columns", self.cols, other.cols));
        }
        Ok(Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j)
            } else {
                other.get(i - self.rows, j)
            }
        }))
    }

    /// `U ∘ A`: keeps the diagonal and everything above it.
    pub fn mask_upper(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| if j >= i { self.get(i, j) } else { 0.0 })
    }

    /// `L̂ ∘ A`: keeps only the entries strictly below the diagonal.
    pub fn mask_strict_lower(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| if i > j { self.get(i, j) } else { 0.0 })
    }

    /// `(L̂ ∘ A) − (L̂ ∘ A)ᵀ`, which is exactly skew-symmetric.
    pub fn skew_from_strict_lower(&self) -> Self {
        assert!(self.is_square(), "skew part of a non-square matrix");
        Self::from_fn(self.rows, self.cols, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.get(i, j),
            std::cmp::Ordering::Less => -self.get(j, i),
            std::cmp::Ordering::Equal => 0.0,
        })
    }

    /// Frobenius norm of `A + Aᵀ`.
    pub fn skew_residual(&self) -> f64 {
        assert!(self.is_square(), "skew residual of a non-square matrix");
        (self + &self.transpose()).frobenius_norm()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j) == 0.0))
    }

    pub fn is_strictly_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i..self.cols).all(|j| self.get(i, j) == 0.0))
    }

    fn zip_with(&self, other: &DenseMatrix, op: &str, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(
            self.dims(),
            other.dims(),
            "{op} of {}x{} and {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn matmul(&self, other: &DenseMatrix) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "product of {}x{} and {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.matmul(rhs)
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.zip_with(rhs, "sum", |a, b| a + b)
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.zip_with(rhs, "difference", |a, b| a - b)
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;

    fn neg(self) -> DenseMatrix {
        self.map(|x| -x)
    }
}

/// `‖a − b‖_F / ‖b‖_F`, or the absolute difference when `b` is zero.
pub fn relative_difference(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let diff = (a - b).frobenius_norm();
    let scale = b.frobenius_norm();
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// The index sizes `m ≥ n ≥ 1` and `p = m − n` of a tall (or square) problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if n == 0 || m < n {
            return dim_err(format!("need m >= n >= 1, got m={m}, n={n}"));
        }
        Ok(Shape { m, n, p: m - n })
    }

    pub fn of(a: &DenseMatrix) -> Result<Self> {
        Shape::new(a.rows(), a.cols())
    }

    pub fn is_tall(&self) -> bool {
        self.p > 0
    }
}

/// Blocks of a matrix under the `n`/`p` index split.
#[derive(Debug, Clone, PartialEq)]
pub enum Partition {
    /// An `m × m` matrix split as `[A_nn A_np; A_pn A_pp]`.
    Full {
        nn: DenseMatrix,
        np: DenseMatrix,
        pn: DenseMatrix,
        pp: DenseMatrix,
    },
    /// An `m × n` matrix split as `[A_nn; A_pn]`.
    Columns { nn: DenseMatrix, pn: DenseMatrix },
}

impl Partition {
    pub fn reassemble(&self) -> DenseMatrix {
        match self {
            Partition::Full { nn, np, pn, pp } => {
                let top = nn.hstack(np).expect("partition blocks are consistent");
                let bottom = pn.hstack(pp).expect("partition blocks are consistent");
                top.vstack(&bottom).expect("partition blocks are consistent")
            }
            Partition::Columns { nn, pn } => nn.vstack(pn).expect("partition blocks are consistent"),
        }
    }
}

/// Splits `a` (either `m × m` or `m × n`) into its index blocks.
pub fn partition(a: &DenseMatrix, shape: Shape) -> Result<Partition> {
    let Shape { m, n, p } = shape;
    if a.rows() != m {
        return dim_err(format!("matrix has {} rows, shape expects m={m}", a.rows()));
    }
    if a.cols() == m {
        Ok(Partition::Full {
            nn: a.block(0, 0, n, n),
            np: a.block(0, n, n, p),
            pn: a.block(n, 0, p, n),
            pp: a.block(n, n, p, p),
        })
    } else if a.cols() == n {
        Ok(Partition::Columns {
            nn: a.block(0, 0, n, n),
            pn: a.block(n, 0, p, n),
        })
    } else {
        dim_err(format!("matrix has {} columns, expected m={m} or n={n}", a.cols()))
    }
}

/// Which side the triangular factor multiplies the unknown from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `L · X = B`
    Left,
    /// `X · L = B`
    Right,
}

fn check_solve_dims(t: &DenseMatrix, b: &DenseMatrix, side: Side, what: &str) -> Result<()> {
    if !t.is_square() {
        return dim_err(format!("{what} factor is {}x{}, not square", t.rows(), t.cols()));
    }
    let k = t.rows();
    let ok = match side {
        Side::Left => b.rows() == k,
        Side::Right => b.cols() == k,
    };
    if ok {
        Ok(())
    } else {
        dim_err(format!(
            "{what} factor {k}x{k} incompatible with {}x{} right-hand side ({side:?})",
            b.rows(),
            b.cols()
        ))
    }
}

/// Solves with a unit lower triangular `l`. Only the strictly lower part of
/// `l` is read; its diagonal is taken to be one.
pub fn solve_unit_lower(l: &DenseMatrix, b: &DenseMatrix, side: Side) -> Result<DenseMatrix> {
    check_solve_dims(l, b, side, "unit lower")?;
    let k = l.rows();
    let mut x = b.clone();
    match side {
        Side::Left => {
            // forward substitution, row by row
            for i in 0..k {
                for j in 0..i {
                    let lij = l.get(i, j);
                    if lij == 0.0 {
                        continue;
                    }
                    for c in 0..x.cols {
                        let v = x.get(i, c) - lij * x.get(j, c);
                        x.set(i, c, v);
                    }
                }
            }
        }
        Side::Right => {
            // X L = B: column j of X depends on columns j+1.. of X
            for j in (0..k).rev() {
                for i in j + 1..k {
                    let lij = l.get(i, j);
                    if lij == 0.0 {
                        continue;
                    }
                    for r in 0..x.rows {
                        let v = x.get(r, j) - x.get(r, i) * lij;
                        x.set(r, j, v);
                    }
                }
            }
        }
    }
    Ok(x)
}

/// Solves with an upper triangular `u` (entries below the diagonal are ignored).
pub fn solve_upper(u: &DenseMatrix, b: &DenseMatrix, side: Side) -> Result<DenseMatrix> {
    check_solve_dims(u, b, side, "upper")?;
    let k = u.rows();
    for i in 0..k {
        let d = u.get(i, i);
        if d.abs() < SINGULAR_DIAGONAL_THRESHOLD {
            return Err(QrError::SingularTriangular { index: i, value: d });
        }
    }
    let mut x = b.clone();
    match side {
        Side::Left => {
            for i in (0..k).rev() {
                let d = u.get(i, i);
                for c in 0..x.cols {
                    let mut s = x.get(i, c);
                    for j in i + 1..k {
                        s -= u.get(i, j) * x.get(j, c);
                    }
                    x.set(i, c, s / d);
                }
            }
        }
        Side::Right => {
            for j in 0..k {
                let d = u.get(j, j);
                for r in 0..x.rows {
                    let mut s = x.get(r, j);
                    for i in 0..j {
                        s -= x.get(r, i) * u.get(i, j);
                    }
                    x.set(r, j, s / d);
                }
            }
        }
    }
    Ok(x)
}

/// General square solve by Gaussian elimination with partial pivoting.
pub fn solve_dense(a: &DenseMatrix, b: &DenseMatrix, side: Side) -> Result<DenseMatrix> {
    check_solve_dims(a, b, side, "general")?;
    match side {
        Side::Left => solve_dense_left(a, b),
        // X A = B  <=>  Aᵀ Xᵀ = Bᵀ
        Side::Right => Ok(solve_dense_left(&a.transpose(), &b.transpose())?.transpose()),
    }
}

fn solve_dense_left(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let k = a.rows();
    let mut lu = a.clone();
    let mut x = b.clone();
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&r, &s| lu.get(r, col).abs().total_cmp(&lu.get(s, col).abs()))
            .expect("non-empty pivot range");
        let pv = lu.get(pivot, col);
        if pv.abs() < SINGULAR_DIAGONAL_THRESHOLD {
            return Err(QrError::SingularTriangular { index: col, value: pv });
        }
        if pivot != col {
            for c in 0..k {
                let (s, t) = (lu.get(col, c), lu.get(pivot, c));
                lu.set(col, c, t);
                lu.set(pivot, c, s);
            }
            for c in 0..x.cols {
                let (s, t) = (x.get(col, c), x.get(pivot, c));
                x.set(col, c, t);
                x.set(pivot, c, s);
            }
        }
        for r in col + 1..k {
            let f = lu.get(r, col) / pv;
            if f == 0.0 {
                continue;
            }
            for c in col..k {
                let v = lu.get(r, c) - f * lu.get(col, c);
                lu.set(r, c, v);
            }
            for c in 0..x.cols {
                let v = x.get(r, c) - f * x.get(col, c);
                x.set(r, c, v);
            }
        }
    }
    solve_upper(&lu, &x, Side::Left)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn constructor_rejects_non_finite() {
        let err = DenseMatrix::new(1, 2, vec![1.0, f64::NAN]).unwrap_err();
        assert_eq!(err, QrError::NonFinite { row: 0, col: 1 });
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn partition_square_two_by_two() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let parts = partition(&a, Shape::new(2, 1).unwrap()).unwrap();
        match &parts {
            Partition::Full { nn, np, pn, pp } => {
                assert_eq!(nn, &m(&[&[1.0]]));
                assert_eq!(np, &m(&[&[2.0]]));
                assert_eq!(pn, &m(&[&[3.0]]));
                assert_eq!(pp, &m(&[&[4.0]]));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parts.reassemble(), a);
    }

    #[test]
    fn partition_tall_column() {
        let a = DenseMatrix::column(&[3.0, 4.0]).unwrap();
        let parts = partition(&a, Shape::new(2, 1).unwrap()).unwrap();
        assert_eq!(
            parts,
            Partition::Columns { nn: m(&[&[3.0]]), pn: m(&[&[4.0]]) }
        );
        assert_eq!(parts.reassemble(), a);
    }

    #[test]
    fn partition_square_problem_has_empty_p_blocks() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let parts = partition(&a, Shape::new(2, 2).unwrap()).unwrap();
        let Partition::Full { nn, np, pn, pp } = &parts else { panic!() };
        assert_eq!(nn, &a);
        assert_eq!(np.dims(), (2, 0));
        assert_eq!(pn.dims(), (0, 2));
        assert_eq!(pp.dims(), (0, 0));
        assert_eq!(parts.reassemble(), a);
    }

    #[test]
    fn partition_rejects_mismatch() {
        let a = DenseMatrix::zeros(3, 2);
        assert!(matches!(
            partition(&a, Shape::new(4, 2).unwrap()),
            Err(QrError::Dimension(_))
        ));
        assert!(partition(&DenseMatrix::zeros(4, 3), Shape::new(4, 2).unwrap()).is_err());
    }

    #[test]
    fn masks() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(a.mask_upper(), m(&[&[1.0, 2.0], &[0.0, 4.0]]));
        assert_eq!(a.mask_strict_lower(), m(&[&[0.0, 0.0], &[3.0, 0.0]]));
        assert_eq!(&a.mask_upper() + &a.mask_strict_lower(), a);
        assert_eq!(DenseMatrix::zeros(3, 2).mask_upper(), DenseMatrix::zeros(3, 2));
        assert_eq!(m(&[&[5.0]]).mask_upper(), m(&[&[5.0]]));
        assert_eq!(m(&[&[5.0]]).mask_strict_lower(), m(&[&[0.0]]));
    }

    #[test]
    fn unit_lower_solves() {
        let b = DenseMatrix::column(&[1.0, 0.0]).unwrap();
        let l = m(&[&[1.0, 0.0], &[2.0, 1.0]]);
        let x = solve_unit_lower(&l, &b, Side::Left).unwrap();
        assert_eq!(x, DenseMatrix::column(&[1.0, -2.0]).unwrap());
        let id = DenseMatrix::identity(2);
        assert_eq!(solve_unit_lower(&id, &b, Side::Left).unwrap(), b);
        let br = m(&[&[1.0, 5.0]]);
        let xr = solve_unit_lower(&l, &br, Side::Right).unwrap();
        assert_eq!(&xr * &l, br);
    }

    #[test]
    fn upper_solves() {
        let u = m(&[&[2.0, 0.0], &[0.0, 4.0]]);
        let x = solve_upper(&u, &DenseMatrix::identity(2), Side::Left).unwrap();
        assert_eq!(x, m(&[&[0.5, 0.0], &[0.0, 0.25]]));
        let b = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(solve_upper(&DenseMatrix::identity(2), &b, Side::Right).unwrap(), b);
    }

    #[test]
    fn upper_solve_rejects_zero_diagonal() {
        let u = m(&[&[1.0, 3.0], &[0.0, 0.0]]);
        let err = solve_upper(&u, &DenseMatrix::identity(2), Side::Left).unwrap_err();
        assert_eq!(err, QrError::SingularTriangular { index: 1, value: 0.0 });
    }

    #[test]
    fn solve_dimension_errors() {
        let l = DenseMatrix::identity(2);
        let b = DenseMatrix::zeros(3, 1);
        assert!(matches!(solve_unit_lower(&l, &b, Side::Left), Err(QrError::Dimension(_))));
        assert!(matches!(solve_upper(&l, &b, Side::Right), Err(QrError::Dimension(_))));
    }

    #[test]
    fn dense_solve_with_pivoting() {
        let a = m(&[&[0.0, 1.0], &[2.0, 3.0]]);
        let b = m(&[&[1.0], &[5.0]]);
        let x = solve_dense(&a, &b, Side::Left).unwrap();
        assert!(relative_difference(&(&a * &x), &b) < 1e-15);
        let br = m(&[&[1.0, 1.0]]);
        let xr = solve_dense(&a, &br, Side::Right).unwrap();
        assert!(relative_difference(&(&xr * &a), &br) < 1e-15);
        let singular = m(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(solve_dense(&singular, &b, Side::Left).is_err());
    }

    #[test]
    fn skew_construction_is_exact() {
        let a = m(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.0]]);
        let s = a.skew_from_strict_lower();
        assert_eq!(s.skew_residual(), 0.0);
        assert_eq!(s.get(1, 0), 4.0);
        assert_eq!(s.get(0, 1), -4.0);
    }
}
