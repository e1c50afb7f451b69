//! Dense complex linear algebra: SVD, Hermitian eigenproblems and the
//! Takagi factorization of complex symmetric matrices.

mod eigen;
mod matrix;
pub mod random;
mod spectrum;
mod svd;
mod takagi;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::{ComplexMatrix, MatrixJson, C64};
pub(crate) use matrix::{dot, dot_conj, norm, I, ONE, ZERO};
pub use spectrum::{cluster, Cluster, SingularSpectrum};
pub use svd::{svd, svd_with, Svd};
pub use takagi::{takagi, takagi_with, unitarily_congruent, TakagiFactorization};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Relative residual tolerance and absolute clustering tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel: DEFAULT_TOL,
            cluster: DEFAULT_CLUSTER_TOL,
        }
    }
}
