//! Seeded random matrices for sampling and tests.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{from_columns, orthogonalize_against, ComplexMatrix};

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_complex<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Random complex symmetric matrix with Gaussian entries.
pub fn random_symmetric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = complex_gaussian(rng);
            m[(i, j)] = z;
            m[(j, i)] = z;
        }
    }
    m
}

/// Haar-distributed unitary matrix (Gram-Schmidt of a Ginibre matrix).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let nrm = orthogonalize_against(&mut v, &cols);
        if nrm > 1e-6 {
            v.iter_mut().for_each(|x| *x /= nrm);
            cols.push(v);
        }
    }
    from_columns(&cols, n)
}

/// Random real orthogonal matrix stored as a complex matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| C64::new(gaussian(rng), 0.0)).collect();
        let nrm = orthogonalize_against(&mut v, &cols);
        if nrm > 1e-6 {
            v.iter_mut().for_each(|x| *x /= nrm);
            cols.push(v);
        }
    }
    from_columns(&cols, n)
}

/// Uniform point in the closed disk of the given radius.
pub fn point_in_disk<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> C64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen::<f64>() * std::f64::consts::TAU;
    C64::from_polar(r, t)
}
