//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.

use num_complex::Complex64 as C64;

use super::matrix::{complete_orthonormal, from_columns, orthogonalize_against, ComplexMatrix, ZERO};
use super::spectrum::SingularSpectrum;
use super::Tolerances;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// `M = V Σ W*` with `V`, `W` unitary and `Σ` the `rows x cols` matrix
/// carrying the nondecreasing singular values on its leading diagonal.
#[derive(Debug, Clone)]
pub struct Svd {
    pub v: ComplexMatrix,
    pub spectrum: SingularSpectrum,
    pub w: ComplexMatrix,
}

impl Svd {
    /// The rectangular diagonal factor `Σ`.
    pub fn sigma(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.v.cols(), self.w.cols());
        for (i, &x) in self.spectrum.values.iter().enumerate() {
            s[(i, i)] = C64::new(x, 0.0);
        }
        s
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &(&self.v * &self.sigma()) * &self.w.adjoint()
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    svd_with(m, &Tolerances::default())
}

pub fn svd_with(m: &ComplexMatrix, tol: &Tolerances) -> Result<Svd> {
    m.ensure_finite()?;
    let (v, values, w) = if m.rows() >= m.cols() {
        tall_svd(m)?
    } else {
        let (u, s, w) = tall_svd(&m.adjoint())?;
        (w, s, u)
    };
    let spectrum = SingularSpectrum::new(values, tol.cluster)?;
    let out = Svd { v, spectrum, w };
    let scale = m.frobenius_norm();
    let resid = (&out.reconstruct() - m).frobenius_norm();
    if resid > tol.rel * scale.max(f64::MIN_POSITIVE) && resid > 0.0 {
        return Err(Error::numeric("SVD reconstruction check failed", resid / scale));
    }
    Ok(out)
}

/// One-sided Jacobi on the columns of a matrix with `rows >= cols`.
/// Returns `(U, σ ascending, W)` with `M = U Σ W*`.
fn tall_svd(m: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
    let r = m.rows();
    let c = m.cols();
    let mut g: Vec<Vec<C64>> = (0..c).map(|j| m.column(j)).collect();
    let mut w: Vec<Vec<C64>> = (0..c)
        .map(|j| {
            let mut e = vec![ZERO; c];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    // Columns at roundoff level relative to the whole matrix are left alone;
    // rotating them only reshuffles noise and can keep a sweep from settling.
    let fro = m.frobenius_norm();
    let tiny = (f64::EPSILON * fro).powi(2);
    let mut converged = c < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c {
            for q in (p + 1)..c {
                rotated |= rotate_pair(&mut g, &mut w, p, q, tiny);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric("one-sided Jacobi SVD did not converge", f64::NAN));
    }

    let norms: Vec<f64> = g.iter().map(|col| super::matrix::norm(col)).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&a, &b| norms[a].total_cmp(&norms[b]));
    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let smax = values.last().copied().unwrap_or(0.0);
    let floor = smax * f64::EPSILON * (r.max(c) as f64) * 4.0;

    // Left vectors from the largest values down, completing the rest.
    let mut left: Vec<Option<Vec<C64>>> = vec![None; c];
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for k in (0..c).rev() {
        let j = order[k];
        if values[k] <= floor {
            break;
        }
        let mut u: Vec<C64> = g[j].iter().map(|x| x / values[k]).collect();
        let nrm = orthogonalize_against(&mut u, &basis);
        if nrm < 0.5 {
            break;
        }
        for x in u.iter_mut() {
            *x /= nrm;
        }
        basis.push(u.clone());
        left[k] = Some(u);
    }
    let mut extra = basis.clone();
    complete_orthonormal(&mut extra, r);
    let mut fill = extra.into_iter().skip(basis.len());
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(r);
    for slot in left.into_iter() {
        cols.push(match slot {
            Some(u) => u,
            None => fill.next().expect("completion has enough vectors"),
        });
    }
    cols.extend(fill);

    let u = from_columns(&cols, r);
    let wm = ComplexMatrix::from_fn(c, c, |i, k| w[order[k]][i]);
    Ok((u, values, wm))
}

fn rotate_pair(g: &mut [Vec<C64>], w: &mut [Vec<C64>], p: usize, q: usize, tiny: f64) -> bool {
    let alpha: f64 = g[p].iter().map(|x| x.norm_sqr()).sum();
    let beta: f64 = g[q].iter().map(|x| x.norm_sqr()).sum();
    let gamma: C64 = g[p].iter().zip(&g[q]).map(|(a, b)| a.conj() * b).sum();
    let gabs = gamma.norm();
    let len = g[p].len() as f64;
    if gabs == 0.0 || alpha.min(beta) <= tiny || gabs <= f64::EPSILON * len.sqrt() * (alpha * beta).sqrt() {
        return false;
    }
    let e = (gamma / gabs).conj();
    let zeta = (beta - alpha) / (2.0 * gabs);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = cs * t;
    for cols in [g, w] {
        let (lo, hi) = cols.split_at_mut(q);
        let (a, b) = (&mut lo[p], &mut hi[0]);
        for (x, y) in a.iter_mut().zip(b.iter_mut()) {
            let h = e * *y;
            let nx = *x * cs - h * sn;
            let ny = *x * sn + h * cs;
            *x = nx;
            *y = ny;
        }
    }
    true
}
