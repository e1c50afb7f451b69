//! Takagi factorization `S = ᵗU Σ U` of complex symmetric matrices.
//!
//! Writing `S = A + iB` with `A`, `B` real symmetric, a vector `q = x + iy`
//! solves `S q̄ = σ q` exactly when `[x; y]` is an eigenvector of the real
//! symmetric matrix `[[A, B], [B, -A]]` with eigenvalue `σ`. The spectrum of
//! that matrix is `±σ_k`, and real-orthonormal eigenvectors for positive
//! eigenvalues give unitary-orthonormal `q`, so clustered singular values
//! need no separate treatment.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::eigen::hermitian_eigen;
use super::matrix::{complete_orthonormal, orthogonalize_against, ComplexMatrix};
use super::spectrum::SingularSpectrum;
use super::svd::svd_with;
use super::Tolerances;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TakagiFactorization {
    #[serde(rename = "U")]
    pub u: ComplexMatrix,
    pub spectrum: SingularSpectrum,
}

impl TakagiFactorization {
    /// `ᵗU diag(σ) U`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::diag_real(&self.spectrum.values);
        &(&self.u.transpose() * &d) * &self.u
    }
}

pub fn takagi(s: &ComplexMatrix) -> Result<TakagiFactorization> {
    takagi_with(s, &Tolerances::default())
}

pub fn takagi_with(s: &ComplexMatrix, tol: &Tolerances) -> Result<TakagiFactorization> {
    if !s.is_square() {
        return Err(Error::invalid(format!(
            "Takagi factorization needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    s.ensure_finite()?;
    let n = s.rows();
    let scale = s.frobenius_norm();
    let asym = s.asymmetry();
    if asym > tol.rel * scale {
        return Err(Error::invalid(format!(
            "matrix is not symmetric: ‖S − ᵗS‖ = {asym:.3e} exceeds {:.1e}·‖S‖",
            tol.rel
        )));
    }
    if scale == 0.0 {
        return Ok(TakagiFactorization {
            u: ComplexMatrix::identity(n),
            spectrum: SingularSpectrum::new(vec![0.0; n], tol.cluster)?,
        });
    }

    let sym = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let embed = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (a, b) = (i % n, j % n);
        let z = sym[(a, b)];
        let v = match (i < n, j < n) {
            (true, true) => z.re,
            (true, false) | (false, true) => z.im,
            (false, false) => -z.re,
        };
        C64::new(v, 0.0)
    });
    let eig = hermitian_eigen(&embed)?;

    // Top n eigenvalues, largest first.
    let delta = 64.0 * (n as f64) * f64::EPSILON * scale;
    let mut sigma = Vec::with_capacity(n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for k in (n..2 * n).rev() {
        let lam = eig.values[k];
        if lam <= delta {
            break;
        }
        let mut q: Vec<C64> = (0..n)
            .map(|i| C64::new(eig.vectors[(i, k)].re, eig.vectors[(n + i, k)].re))
            .collect();
        let nrm = orthogonalize_against(&mut q, &cols);
        if nrm < 0.5 {
            break;
        }
        for x in q.iter_mut() {
            *x /= nrm;
        }
        cols.push(q);
        sigma.push(lam);
    }
    complete_orthonormal(&mut cols, n);
    sigma.resize(n, 0.0);

    // Ascending order: U = ᵗQ with Q's columns reversed.
    sigma.reverse();
    cols.reverse();
    let u = ComplexMatrix::from_fn(n, n, |i, j| cols[i][j]);
    let out = TakagiFactorization {
        u,
        spectrum: SingularSpectrum::new(sigma, tol.cluster)?,
    };
    let resid = (&out.reconstruct() - s).frobenius_norm();
    if resid > tol.rel * scale {
        return Err(Error::numeric("Takagi reconstruction check failed", resid / scale));
    }
    Ok(out)
}

/// Whether two complex symmetric matrices are unitarily congruent, decided
/// by comparing their sorted singular values entrywise within `tol`.
pub fn unitarily_congruent(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<bool> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::invalid(format!(
            "congruence test needs square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let opts = Tolerances::default();
    let sa = svd_with(a, &opts)?.spectrum;
    let sb = svd_with(b, &opts)?.spectrum;
    Ok(sa.max_abs_diff(&sb.values) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_half_third() -> ComplexMatrix {
        let (y, z) = (1.0 / 3.0, 0.5);
        let r3 = 3f64.sqrt();
        ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 0.0, 1.5 * y],
            &[0.0, 0.0, -0.5 * y, -0.5 * r3 * z],
            &[0.0, -0.5 * y, z, 0.0],
            &[1.5 * y, -0.5 * r3 * z, 0.0, 0.0],
        ])
    }

    #[test]
    fn worked_example_spectrum() {
        let t = takagi(&s_half_third()).unwrap();
        let r = 19f64.sqrt() / 12.0;
        let want = [r - 1.0 / 3.0, 0.5, 2.0 / 3.0, r + 1.0 / 3.0];
        assert!(t.spectrum.max_abs_diff(&want) < 1e-12, "{:?}", t.spectrum.values);
        assert!(t.u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn unitary_antidiagonal() {
        let s = ComplexMatrix::antidiag_real(&[1.0, -1.0, 1.0]);
        let t = takagi(&s).unwrap();
        assert!(t.spectrum.max_abs_diff(&[1.0, 1.0, 1.0]) < 1e-14);
        assert_eq!(t.spectrum.clusters.len(), 1);
    }

    #[test]
    fn zero_matrix_gives_identity() {
        let t = takagi(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(t.u, ComplexMatrix::identity(3));
        assert_eq!(t.spectrum.values, vec![0.0; 3]);
    }

    #[test]
    fn rank_deficient_complex() {
        let v = [C64::new(1.0, 0.5), C64::new(-0.3, 2.0), C64::new(0.0, 1.0)];
        let s = ComplexMatrix::from_fn(3, 3, |i, j| v[i] * v[j]);
        let t = takagi(&s).unwrap();
        assert!(t.spectrum.values[0] < 1e-13 && t.spectrum.values[1] < 1e-13);
        assert!((&t.reconstruct() - &s).frobenius_norm() < 1e-13);
    }

    #[test]
    fn asymmetric_is_rejected() {
        let s = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(takagi(&s), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn congruence_decisions() {
        let a = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let b = ComplexMatrix::diag_real(&[0.0, 1.0]);
        assert!(unitarily_congruent(&a, &b, 1e-10).unwrap());
        let c = ComplexMatrix::antidiag_real(&[0.5, -0.5, 0.5]);
        let d = ComplexMatrix::antidiag_real(&[0.7, -0.7, 0.7]);
        assert!(!unitarily_congruent(&c, &d, 1e-10).unwrap());
        assert!(unitarily_congruent(&a, &c, 1e-10).is_err());
    }
}
