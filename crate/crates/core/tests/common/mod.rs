#![allow(dead_code)]

use bdris::{ComplexMatrix, ComplexVector, LinkChannels, C64};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cn(rng: &mut ChaCha8Rng) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re * s, im * s)
}

pub fn cn_vector(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    ComplexVector::new((0..n).map(|_| cn(rng)).collect()).unwrap()
}

pub fn cn_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| cn(rng))
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let b = cn_matrix(rng, n, n);
    b.add(&b.transpose()).unwrap()
}

pub fn rayleigh_siso(rng: &mut ChaCha8Rng, m: usize) -> LinkChannels {
    LinkChannels::siso(cn_vector(rng, m), cn_vector(rng, m), None).unwrap()
}

pub fn to_na(a: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(a.rows(), a.cols(), |r, c| a[(r, c)])
}

pub fn from_na(a: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.nrows(), a.ncols(), |r, c| a[(r, c)])
}

/// Haar-ish random unitary from the QR of a Gaussian matrix (nalgebra).
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = to_na(&cn_matrix(rng, n, n));
    from_na(&g.qr().q())
}

/// Singular values from nalgebra, descending.
pub fn oracle_singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(a).singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.random::<f64>()
}
