//! Seeded random instances for tests, examples and the verification suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::DenseMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix with independent standard normal entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Unit lower triangular matrix with normal entries below the diagonal.
pub fn unit_lower_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    let g = gaussian_matrix(rng, n, n);
    DenseMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => 0.5 * g.get(i, j),
        std::cmp::Ordering::Equal => 1.0,
        std::cmp::Ordering::Less => 0.0,
    })
}

/// Upper triangular matrix with a diagonal bounded away from zero.
pub fn upper_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DenseMatrix {
    let g = gaussian_matrix(rng, n, n);
    DenseMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => 0.5 * g.get(i, j),
        std::cmp::Ordering::Equal => {
            let d = g.get(i, j);
            d.signum() * (1.0 + d.abs())
        }
        std::cmp::Ordering::Greater => 0.0,
    })
}

/// A tall `m × n` problem `A` with a direction `∂A`, both Gaussian.
pub fn instance<R: Rng + ?Sized>(rng: &mut R, m: usize, n: usize) -> (DenseMatrix, DenseMatrix) {
    let a = gaussian_matrix(rng, m, n);
    let da = gaussian_matrix(rng, m, n);
    (a, da)
}
