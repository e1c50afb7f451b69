//! Quadrics containing Veronese maps: the real-linear constraint systems,
//! kernel dimensions, membership tests and tangent-developable generators.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, random::gaussian, svd_with, ComplexMatrix, SingularSpectrum, Tolerances, C64, ZERO};
use crate::veronese::{self, binomial_f64, check_degree, sqrt_binomials, GroupElement};

/// Relative threshold below which a singular value of a constraint matrix
/// counts as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// A complex symmetric `(d+1) x (d+1)` matrix, stored exactly symmetric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "QuadricJson", try_from = "QuadricJson")]
pub struct SymmetricQuadric {
    d: usize,
    s: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricJson {
    pub d: usize,
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl From<SymmetricQuadric> for QuadricJson {
    fn from(q: SymmetricQuadric) -> Self {
        let mut entries = Vec::new();
        for i in 0..=q.d {
            for j in i..=q.d {
                let z = q.s[(i, j)];
                if z != ZERO {
                    entries.push((i, j, z.re, z.im));
                }
            }
        }
        QuadricJson { d: q.d, entries }
    }
}

impl TryFrom<QuadricJson> for SymmetricQuadric {
    type Error = Error;

    fn try_from(j: QuadricJson) -> Result<Self> {
        check_degree(j.d)?;
        let mut s = ComplexMatrix::zeros(j.d + 1, j.d + 1);
        let mut seen = vec![false; (j.d + 1) * (j.d + 1)];
        for &(a, b, re, im) in &j.entries {
            let (i, k) = if a <= b { (a, b) } else { (b, a) };
            if k > j.d {
                return Err(Error::invalid(format!("entry ({a}, {b}) out of range for d = {}", j.d)));
            }
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::invalid(format!("entry ({a}, {b}) is not finite")));
            }
            let slot = i * (j.d + 1) + k;
            if seen[slot] {
                return Err(Error::invalid(format!("entry ({i}, {k}) given twice")));
            }
            seen[slot] = true;
            s[(i, k)] = C64::new(re, im);
            s[(k, i)] = C64::new(re, im);
        }
        Ok(SymmetricQuadric { d: j.d, s })
    }
}

impl SymmetricQuadric {
    /// Wraps `s`, which must be `(d+1) x (d+1)` and symmetric up to
    /// `1e-12 ‖s‖`; the stored matrix is the exact symmetric part.
    pub fn new(d: usize, s: ComplexMatrix) -> Result<Self> {
        check_degree(d)?;
        if s.rows() != d + 1 || s.cols() != d + 1 {
            return Err(Error::invalid(format!(
                "degree {d} needs a {}x{} matrix, got {}x{}",
                d + 1,
                d + 1,
                s.rows(),
                s.cols()
            )));
        }
        s.ensure_finite()?;
        let asym = s.asymmetry();
        if asym > 1e-12 * s.frobenius_norm() {
            return Err(Error::invalid(format!("matrix is not symmetric (‖S − ᵗS‖ = {asym:.3e})")));
        }
        let sym = ComplexMatrix::from_fn(d + 1, d + 1, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
        Ok(SymmetricQuadric { d, s: sym })
    }

    pub fn zero(d: usize) -> Result<Self> {
        Self::new(d, ComplexMatrix::zeros(d + 1, d + 1))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.s
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.s[(i, j)]
    }

    pub fn scale(&self, lambda: C64) -> Self {
        SymmetricQuadric {
            d: self.d,
            s: self.s.scale(lambda),
        }
    }

    /// `λ · ᵗρ(g) S ρ(g)`.
    pub fn transform(&self, g: &GroupElement, lambda: C64) -> Result<Self> {
        let rho = veronese::su2_rep_matrix(self.d, g)?;
        let t = &(&rho.transpose() * &self.s) * &rho;
        Ok(SymmetricQuadric {
            d: self.d,
            s: ComplexMatrix::from_fn(self.d + 1, self.d + 1, |i, j| lambda * 0.5 * (t[(i, j)] + t[(j, i)])),
        })
    }

    /// Real coordinates `(Re s_ij, Im s_ij)` for `i <= j`, row-major over the
    /// upper triangle.
    pub fn to_real_coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(num_unknowns(self.d) * 2);
        for i in 0..=self.d {
            for j in i..=self.d {
                out.push(self.s[(i, j)].re);
                out.push(self.s[(i, j)].im);
            }
        }
        out
    }

    pub fn from_real_coords(d: usize, x: &[f64]) -> Result<Self> {
        check_degree(d)?;
        if x.len() != 2 * num_unknowns(d) {
            return Err(Error::invalid("real coordinate vector has the wrong length"));
        }
        let mut s = ComplexMatrix::zeros(d + 1, d + 1);
        for i in 0..=d {
            for j in i..=d {
                let k = unknown_index(d, i, j);
                let z = C64::new(x[2 * k], x[2 * k + 1]);
                s[(i, j)] = z;
                s[(j, i)] = z;
            }
        }
        Ok(SymmetricQuadric { d, s })
    }
}

/// Number of complex unknowns `s_ij`, `i <= j`.
pub fn num_unknowns(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

pub(crate) fn unknown_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j <= d);
    // Rows 0..i of the upper triangle hold (d+1) + d + ... + (d+2-i) entries.
    i * (d + 1) - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// `ᵗZ_{d,p}(z) S Z_{d,p}(z)`.
pub fn containment_residual(s: &SymmetricQuadric, p: usize, z: C64) -> Result<C64> {
    bilinear_residual(s, p, p, z)
}

/// `ᵗZ_{d,k}(z) S Z_{d,l}(z)`.
pub fn bilinear_residual(s: &SymmetricQuadric, k: usize, l: usize, z: C64) -> Result<C64> {
    let zk = veronese::veronese_map(s.d, k, z)?;
    let zl = veronese::veronese_map(s.d, l, z)?;
    Ok(s.s.bilinear(&zk, &zl))
}

/// Real-linear system on `(Re s_ij, Im s_ij)`, `i <= j`, whose kernel is the
/// space of quadrics containing `Z_{d,0}, ..., Z_{d,p}`.
///
/// For each `k <= p` and each `t` in `[2k, 2d-2k]` the complex equation
/// `Σ_{i+j=t} s_ij j^{2k} √(C(d,i) C(d,j)) = 0` must hold. For fixed `t`,
/// with `c = i - t/2`, the weights `i^{2k} + j^{2k}` span the even
/// polynomials in `c` of degree at most `2K`, so the system stores the
/// equivalent equations with weights `T_{2m}(c / c_max)`, `m <= K`
/// (Chebyshev polynomials). The monomial form is badly conditioned beyond
/// `d = 9`. Each complex equation contributes two real rows of unit length.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub d: usize,
    pub p: usize,
    /// `(m, t)`: the `m`-th equation on the anti-diagonal `i + j = t`; real
    /// rows `2e` and `2e+1`.
    pub labels: Vec<(usize, usize)>,
    pub rows: Vec<Vec<f64>>,
}

impl ConstraintSystem {
    pub fn num_cols(&self) -> usize {
        2 * num_unknowns(self.d)
    }

    /// Largest absolute value of a (unit) row applied to `s`.
    pub fn residual(&self, s: &SymmetricQuadric) -> f64 {
        let x = s.to_real_coords();
        self.rows
            .iter()
            .map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    /// Numeric rank, with singular values below `1e-8 σ_max` treated as zero.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.analysis()?.0)
    }

    /// Real basis of the kernel, as symmetric matrices.
    pub fn kernel_basis(&self) -> Result<Vec<SymmetricQuadric>> {
        let (rank, w) = self.analysis()?;
        let cols = self.num_cols();
        (rank..cols)
            .map(|c| {
                let x: Vec<f64> = (0..cols).map(|i| w[(i, c)].re).collect();
                SymmetricQuadric::from_real_coords(self.d, &x)
            })
            .collect()
    }

    /// Orthogonal projection of `s` onto the kernel.
    pub fn project_to_kernel(&self, s: &SymmetricQuadric) -> Result<SymmetricQuadric> {
        self.project_to_kernel_with(&self.kernel_basis()?, s)
    }

    /// [`Self::project_to_kernel`] with a precomputed [`Self::kernel_basis`].
    pub fn project_to_kernel_with(&self, basis: &[SymmetricQuadric], s: &SymmetricQuadric) -> Result<SymmetricQuadric> {
        if s.d != self.d {
            return Err(Error::invalid(format!("S has degree {}, the system {}", s.d, self.d)));
        }
        let x = s.to_real_coords();
        let mut out = vec![0.0; x.len()];
        for b in basis {
            let bx = b.to_real_coords();
            let c: f64 = bx.iter().zip(&x).map(|(a, b)| a * b).sum();
            for (o, v) in out.iter_mut().zip(&bx) {
                *o += c * v;
            }
        }
        SymmetricQuadric::from_real_coords(self.d, &out)
    }

    fn analysis(&self) -> Result<(usize, ComplexMatrix)> {
        analyze_rows(&self.rows, self.num_cols())
    }
}

/// `(rank, W)` for the real matrix with the given rows, where the trailing
/// `cols - rank` columns of `W` span the kernel.
fn analyze_rows(rows: &[Vec<f64>], cols: usize) -> Result<(usize, ComplexMatrix)> {
    let a = ComplexMatrix::from_fn(rows.len().max(1), cols, |i, j| {
        C64::new(rows.get(i).map_or(0.0, |r| r[j]), 0.0)
    });
    // Singular values of A come ascending; the right vectors of A are the
    // columns of W in A = V Σ W*, ordered to match.
    let svd = svd_with(&a, &Tolerances::default())?;
    let vals = &svd.spectrum.values;
    let smax = vals.last().copied().unwrap_or(0.0);
    let rank = vals.iter().filter(|&&s| s > RANK_THRESHOLD * smax && smax > 0.0).count();
    // Reorder W so that the first `rank` columns belong to nonzero values.
    let q = vals.len();
    let mut order: Vec<usize> = (0..q).rev().collect();
    order.extend(q..cols);
    let w = ComplexMatrix::from_fn(cols, cols, |i, j| svd.w[(i, order[j])]);
    Ok((rank, w))
}

/// Orthonormal real basis of the kernel of the matrix with the given rows.
pub(crate) fn real_kernel(rows: &[Vec<f64>], cols: usize) -> Result<Vec<Vec<f64>>> {
    let (rank, w) = analyze_rows(rows, cols)?;
    Ok((rank..cols).map(|c| (0..cols).map(|i| w[(i, c)].re).collect()).collect())
}

/// The constraint system of quadrics containing `Z_{d,0}, ..., Z_{d,p}`.
pub fn membership_system(d: usize, p: usize) -> Result<ConstraintSystem> {
    check_degree(d)?;
    if p > d / 2 {
        return Err(Error::invalid(format!("p = {p} exceeds ⌊d/2⌋ = {}", d / 2)));
    }
    let cols = 2 * num_unknowns(d);
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for t in 0..=2 * d {
        // Equations k = 0..=top apply on this anti-diagonal.
        let top = p.min(t / 2).min((2 * d - t) / 2);
        let lo = t.saturating_sub(d);
        let half = t as f64 / 2.0;
        let c_max = half - lo as f64;
        for m in 0..=top {
            let mut re_row = vec![0.0; cols];
            let mut im_row = vec![0.0; cols];
            for i in lo..=t / 2 {
                let j = t - i;
                let w = (binomial_f64(d, i) * binomial_f64(d, j)).sqrt();
                let x = if c_max > 0.0 { (i as f64 - half) / c_max } else { 0.0 };
                let mult = if i == j { 1.0 } else { 2.0 };
                let coef = mult * w * chebyshev(2 * m, x);
                let idx = unknown_index(d, i, j);
                // coef·(x + iy): real part coef·x, imaginary part coef·y.
                re_row[2 * idx] = coef;
                im_row[2 * idx + 1] = coef;
            }
            let n = re_row.iter().map(|x| x * x).sum::<f64>().sqrt();
            re_row.iter_mut().for_each(|x| *x /= n);
            im_row.iter_mut().for_each(|x| *x /= n);
            labels.push((m, t));
            rows.push(re_row);
            rows.push(im_row);
        }
    }
    Ok(ConstraintSystem { d, p, labels, rows })
}

/// `T_n(x)` by the three-term recurrence.
fn chebyshev(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        (a, b) = (b, 2.0 * x * b - a);
    }
    b
}

/// Numeric real dimension of the kernel of `membership_system(d, p)`.
pub fn kernel_dimension(d: usize, p: usize) -> Result<usize> {
    let sys = membership_system(d, p)?;
    Ok(sys.num_cols() - sys.rank()?)
}

/// `2 Σ_{k=p+1}^{⌊d/2⌋} (2(d-2k)+1)`, the real dimension predicted by the
/// Clebsch-Gordan decomposition.
pub fn expected_kernel_dimension(d: usize, p: usize) -> usize {
    ((p + 1)..=(d / 2)).map(|k| 2 * (2 * (d - 2 * k) + 1)).sum()
}

/// Random element of the kernel of `membership_system(d, p)` with Gaussian
/// coordinates in an orthonormal kernel basis.
pub fn random_kernel_element<R: Rng + ?Sized>(d: usize, p: usize, rng: &mut R) -> Result<SymmetricQuadric> {
    let basis = membership_system(d, p)?.kernel_basis()?;
    random_combination(d, &basis, rng)
}

pub(crate) fn random_combination<R: Rng + ?Sized>(
    d: usize,
    basis: &[SymmetricQuadric],
    rng: &mut R,
) -> Result<SymmetricQuadric> {
    let mut x = vec![0.0; 2 * num_unknowns(d)];
    for b in basis {
        let c = gaussian(rng);
        for (o, v) in x.iter_mut().zip(b.to_real_coords()) {
            *o += c * v;
        }
    }
    SymmetricQuadric::from_real_coords(d, &x)
}

/// Outcome of the membership test for `S_{d,n,p}`.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub residual: f64,
    pub sigma_max: f64,
    pub one_multiplicity: usize,
    pub required_multiplicity: usize,
    pub spectrum: Vec<f64>,
    pub failures: Vec<String>,
}

/// Decides `S ∈ S_{d,n,p}`: the constraint residual is within tolerance, the
/// largest singular value is at most `1 + tol`, and for `n < 2d+1` the
/// singular value 1 occurs at least `2d+1-n` times.
pub fn is_member_s(s: &SymmetricQuadric, n: usize, p: usize, tol: &Tolerances) -> Result<MembershipReport> {
    let d = s.d;
    if n < d || n > 2 * d + 1 {
        return Err(Error::invalid(format!("n = {n} outside [{d}, {}]", 2 * d + 1)));
    }
    let sys = membership_system(d, p)?;
    let residual = sys.residual(s);
    let spectrum = svd_with(&s.s, tol)?.spectrum;
    let sigma_max = spectrum.max();
    let required = 2 * d + 1 - n;
    let one_mult = spectrum.count_near(1.0, tol.cluster);

    let mut failures = Vec::new();
    let scale = s.s.frobenius_norm().max(1.0);
    if residual > tol.rel * scale {
        failures.push(format!("constraint residual {residual:.3e} exceeds tolerance"));
    }
    if sigma_max > 1.0 + tol.cluster {
        failures.push(format!("largest singular value {sigma_max:.12} exceeds 1"));
    }
    if one_mult < required {
        failures.push(format!(
            "singular value 1 has multiplicity {one_mult}, need at least {required}"
        ));
    }
    Ok(MembershipReport {
        member: failures.is_empty(),
        residual,
        sigma_max,
        one_multiplicity: one_mult,
        required_multiplicity: required,
        spectrum: spectrum.values,
        failures,
    })
}

/// Checks the defining inequalities of `Θ_{d,n}`:
/// `0 <= σ_0 <= ... <= σ_d <= 1` and `σ_{n-d} = ... = σ_d = 1`.
pub fn theta_membership(sigma: &[f64], d: usize, n: usize, tol: f64) -> bool {
    if sigma.len() != d + 1 || n < d || n > 2 * d + 1 {
        return false;
    }
    if sigma[0] < -tol || sigma[d] > 1.0 + tol {
        return false;
    }
    if sigma.windows(2).any(|w| w[1] < w[0] - tol) {
        return false;
    }
    (n - d..=d).all(|i| (sigma[i] - 1.0).abs() <= tol)
}

/// Symmetric matrices of the quadrics `Γ_{a,b}` (`0 <= a < b <= d-3`)
/// cutting out the tangent developable of the degree-`d` Veronese curve.
///
/// With the curve written as `z_i = √C(d,i) t^i`, the coordinates
/// `w_i = z_i / √C(d,i)` reduce it to `w_i = t^i`, on which
/// `Δ_{a,b} = w_a w_{b+1} - w_{a+1} w_b` and
/// `Γ_{a,b} = Δ_{a+2,b} - 2Δ_{a+1,b+1} + Δ_{a,b+2}`.
pub fn tangent_developable_generators(d: usize) -> Result<Vec<SymmetricQuadric>> {
    check_degree(d)?;
    if d < 3 {
        return Err(Error::invalid(format!("tangent developable generators need d >= 3, got {d}")));
    }
    let sb = sqrt_binomials(d);
    let mut out = Vec::new();
    for a in 0..=(d - 3) {
        for b in (a + 1)..=(d - 3) {
            let mut s = ComplexMatrix::zeros(d + 1, d + 1);
            let mut term = |i: usize, j: usize, c: f64| {
                let v = C64::new(0.5 * c / (sb[i] * sb[j]), 0.0);
                s[(i, j)] += v;
                s[(j, i)] += v;
            };
            for (x, y, c) in [(a + 2, b, 1.0), (a + 1, b + 1, -2.0), (a, b + 2, 1.0)] {
                term(x, y + 1, c);
                term(x + 1, y, -c);
            }
            out.push(SymmetricQuadric::new(d, s)?);
        }
    }
    Ok(out)
}

/// Real dimension of the real span of `quadrics` and their multiples by `i`.
pub fn complex_span_real_dimension(quadrics: &[SymmetricQuadric]) -> Result<usize> {
    let Some(first) = quadrics.first() else {
        return Ok(0);
    };
    let d = first.d;
    let cols = 2 * num_unknowns(d);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for q in quadrics {
        rows.push(q.to_real_coords());
        rows.push(q.scale(linalg::I).to_real_coords());
    }
    let m = ComplexMatrix::from_fn(rows.len(), cols, |i, j| C64::new(rows[i][j], 0.0));
    let vals = svd_with(&m, &Tolerances::default())?.spectrum.values;
    let smax = vals.last().copied().unwrap_or(0.0);
    Ok(vals.iter().filter(|&&s| smax > 0.0 && s > RANK_THRESHOLD * smax).count())
}

pub(crate) fn spectrum_of(s: &SymmetricQuadric, tol: &Tolerances) -> Result<SingularSpectrum> {
    Ok(svd_with(&s.s, tol)?.spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn antidiag_alternating(d: usize) -> SymmetricQuadric {
        let v: Vec<f64> = (0..=d).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        SymmetricQuadric::new(d, ComplexMatrix::antidiag_real(&v)).unwrap()
    }

    #[test]
    fn unknown_indexing_is_dense() {
        for d in 1..6 {
            let mut k = 0;
            for i in 0..=d {
                for j in i..=d {
                    assert_eq!(unknown_index(d, i, j), k);
                    k += 1;
                }
            }
            assert_eq!(k, num_unknowns(d));
        }
    }

    #[test]
    fn containment_examples() {
        let s = antidiag_alternating(2);
        for z in [c(0.3, 0.1), c(-2.0, 1.5), ZERO] {
            assert!(containment_residual(&s, 0, z).unwrap().norm() < 1e-12);
        }
        let id = SymmetricQuadric::new(1, ComplexMatrix::identity(2)).unwrap();
        assert!((containment_residual(&id, 0, ZERO).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn row_counts() {
        for d in 1..8 {
            for p in 0..=d / 2 {
                let sys = membership_system(d, p).unwrap();
                let want: usize = (0..=p).map(|k| 2 * (2 * d - 4 * k + 1)).sum();
                assert_eq!(sys.rows.len(), want);
            }
        }
        assert!(membership_system(4, 3).is_err());
    }

    #[test]
    fn small_kernel_dimensions() {
        assert_eq!(kernel_dimension(2, 0).unwrap(), 2);
        assert_eq!(kernel_dimension(3, 0).unwrap(), 6);
        assert_eq!(kernel_dimension(4, 1).unwrap(), 2);
        assert_eq!(kernel_dimension(1, 0).unwrap(), 0);
        for d in 1..=8 {
            assert_eq!(kernel_dimension(d, d / 2).unwrap(), 0);
            for p in 0..=d / 2 {
                assert_eq!(kernel_dimension(d, p).unwrap(), expected_kernel_dimension(d, p), "d={d} p={p}");
            }
        }
    }

    #[test]
    fn kernel_elements_contain_the_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (d, p) in [(4, 0), (5, 1), (6, 2)] {
            let s = random_kernel_element(d, p, &mut rng).unwrap();
            let scale = s.matrix().frobenius_norm();
            for _ in 0..10 {
                let z = crate::linalg::random::point_in_disk(2.0, &mut rng);
                for k in 0..=p {
                    let r = containment_residual(&s, k, z).unwrap().norm();
                    let nz = veronese::norm_sq(d, k, z);
                    assert!(r <= 1e-10 * scale * nz, "d={d} p={p} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let tol = Tolerances::default();
        assert!(is_member_s(&antidiag_alternating(2), 4, 0, &tol).unwrap().member);
        let s4 = antidiag_alternating(4);
        assert!(is_member_s(&s4, 5, 0, &tol).unwrap().member);
        assert!(is_member_s(&s4, 4, 0, &tol).unwrap().member);
        for d in 1..6 {
            let z = SymmetricQuadric::zero(d).unwrap();
            assert!(is_member_s(&z, 2 * d + 1, d / 2, &tol).unwrap().member);
        }
        let id = SymmetricQuadric::new(2, ComplexMatrix::identity(3)).unwrap();
        let r = is_member_s(&id, 5, 0, &tol).unwrap();
        assert!(!r.member && !r.failures.is_empty());
        assert!(is_member_s(&id, 6, 0, &tol).is_err());
    }

    #[test]
    fn theta_examples() {
        assert!(theta_membership(&[0.0; 4], 3, 7, 1e-12));
        assert!(theta_membership(&[1.0; 4], 3, 3, 1e-12));
        assert!(!theta_membership(&[1.0, 1.0, 1.0, 0.9], 3, 3, 1e-12));
        assert!(!theta_membership(&[0.5, 0.2, 1.0, 1.0], 3, 5, 1e-12));
        assert!(theta_membership(&[0.1, 0.2, 1.0, 1.0], 3, 5, 1e-12));
    }

    #[test]
    fn tangent_developable_small_degrees() {
        assert_eq!(complex_span_real_dimension(&tangent_developable_generators(3).unwrap()).unwrap(), 0);
        let g4 = tangent_developable_generators(4).unwrap();
        assert_eq!(complex_span_real_dimension(&g4).unwrap(), 2);
        let g6 = tangent_developable_generators(6).unwrap();
        assert_eq!(complex_span_real_dimension(&g6).unwrap(), 12);
        let sys = membership_system(6, 1).unwrap();
        for g in &g6 {
            assert!(sys.residual(g) < 1e-12);
        }
        assert!(tangent_developable_generators(2).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = antidiag_alternating(4).scale(c(0.5, -0.25));
        let text = serde_json::to_string(&s).unwrap();
        let back: SymmetricQuadric = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let lower: SymmetricQuadric = serde_json::from_str(r#"{"d":1,"entries":[[1,0,2.0,0.0]]}"#).unwrap();
        assert_eq!(lower.entry(0, 1), c(2.0, 0.0));
        assert!(serde_json::from_str::<SymmetricQuadric>(r#"{"d":1,"entries":[[0,1,1,0],[1,0,1,0]]}"#).is_err());
        assert!(serde_json::from_str::<SymmetricQuadric>(r#"{"d":1,"entries":[[0,2,1,0]]}"#).is_err());
    }
}
