//! From a symmetric matrix `S` to the frame `E = V_σ U` of a minimal sphere
//! `E Z_{d,p}`, sphere verification, and normalization of representatives.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{random::point_in_disk, takagi_with, ComplexMatrix, SingularSpectrum, Tolerances, C64, I, ONE, ZERO};
use crate::quadrics::{self, is_member_s, membership_system, MembershipReport, SymmetricQuadric};
use crate::veronese::{self, GroupElement};

/// Seed of the random part of the verification sample.
pub const VERIFY_SEED: u64 = 0x5EED_0F_5F4E;
/// Number of containment sample points used by [`verify_sphere`].
pub const VERIFY_SAMPLES: usize = 200;

/// Orthonormal frame `E` (`(n+1) x (d+1)`) of the sphere `E Z_{d,p}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameJson")]
pub struct SphereFrame {
    pub d: usize,
    pub n: usize,
    pub p: usize,
    #[serde(rename = "E")]
    pub e: ComplexMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameJson {
    d: usize,
    n: usize,
    p: usize,
    #[serde(rename = "E")]
    e: ComplexMatrix,
}

impl TryFrom<FrameJson> for SphereFrame {
    type Error = Error;

    fn try_from(j: FrameJson) -> Result<Self> {
        SphereFrame::new(j.d, j.n, j.p, j.e, 1e-8)
    }
}

impl SphereFrame {
    /// Checks the shape, `d <= n <= 2d+1`, `p <= d` and `‖E*E - Id‖ <= tol`.
    pub fn new(d: usize, n: usize, p: usize, e: ComplexMatrix, tol: f64) -> Result<Self> {
        veronese::VeroneseParams::new(d, p)?;
        if n < d || n > 2 * d + 1 {
            return Err(Error::invalid(format!("n = {n} outside [{d}, {}]", 2 * d + 1)));
        }
        if e.rows() != n + 1 || e.cols() != d + 1 {
            return Err(Error::invalid(format!(
                "frame must be {}x{}, got {}x{}",
                n + 1,
                d + 1,
                e.rows(),
                e.cols()
            )));
        }
        e.ensure_finite()?;
        let defect = e.unitarity_defect();
        if defect > tol {
            return Err(Error::invalid(format!("frame columns are not orthonormal (defect {defect:.3e})")));
        }
        Ok(SphereFrame { d, n, p, e })
    }

    /// `ᵗE E`.
    pub fn quadric_matrix(&self) -> ComplexMatrix {
        &self.e.transpose() * &self.e
    }

    /// `E Z_{d,p}(z)/|Z_{d,p}(z)|`.
    pub fn unit_point(&self, z: C64) -> Result<Vec<C64>> {
        Ok(self.e.mul_vec(&veronese::unit_lift(self.d, self.p, z)?))
    }
}

/// The `(n+1) x (d+1)` matrix `V_σ` built from `J`-blocks
/// `[cos a_j Id; i sin a_j Id]`, one per cluster of singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct VSigmaMatrix {
    pub matrix: ComplexMatrix,
}

/// Builds `V_σ` for a spectrum of length `d+1` with values in `[0, 1]`.
///
/// For `n = 2d+1` every cluster contributes `2 r_j` rows. For `n < 2d+1`
/// the top cluster must be the value 1 with multiplicity at least
/// `l = 2d+1-n`; it contributes `Id_{r_m}` followed by `r_m - l` zero rows.
pub fn v_sigma(spectrum: &SingularSpectrum, d: usize, n: usize, tol: &Tolerances) -> Result<VSigmaMatrix> {
    if spectrum.len() != d + 1 {
        return Err(Error::invalid(format!(
            "spectrum has {} values, expected {}",
            spectrum.len(),
            d + 1
        )));
    }
    if n < d || n > 2 * d + 1 {
        return Err(Error::invalid(format!("n = {n} outside [{d}, {}]", 2 * d + 1)));
    }
    if let Some(&bad) = spectrum.values.iter().find(|&&s| !(0.0..=1.0 + tol.cluster).contains(&s)) {
        return Err(Error::invalid(format!("invalid spectrum: singular value {bad} outside [0, 1]")));
    }
    let l = 2 * d + 1 - n;
    let top = spectrum.clusters.last().copied();
    let top_is_one = top.map_or(false, |c| c.range().all(|i| (spectrum.values[i] - 1.0).abs() <= tol.cluster));
    if l > 0 {
        let r_m = top.map_or(0, |c| c.len);
        if !top_is_one || r_m < l {
            let have = if top_is_one { r_m } else { 0 };
            return Err(Error::invalid(format!(
                "invalid spectrum: singular value 1 has multiplicity {have}, need at least {l} for n = {n}"
            )));
        }
    }

    let mut v = ComplexMatrix::zeros(n + 1, d + 1);
    let mut row = 0;
    let last = spectrum.clusters.len() - 1;
    for (ci, c) in spectrum.clusters.iter().enumerate() {
        let drop_rows = if ci == last { l } else { 0 };
        for (off, k) in c.range().enumerate() {
            let sigma = spectrum.values[k].clamp(0.0, 1.0);
            let (cos_a, sin_a) = if ci == last && l > 0 {
                (1.0, 0.0)
            } else {
                let a = 0.5 * sigma.acos();
                (a.cos(), a.sin())
            };
            v[(row + off, k)] = C64::new(cos_a, 0.0);
            if off < c.len - drop_rows {
                v[(row + c.len + off, k)] = I * sin_a;
            }
        }
        row += 2 * c.len - drop_rows;
    }
    debug_assert_eq!(row, n + 1);
    Ok(VSigmaMatrix { matrix: v })
}

/// Builds the frame `E = V_σ U` for `S ∈ S_{d,n,p}` from a Takagi
/// factorization `S = ᵗU diag(σ) U`.
pub fn build_sphere(s: &SymmetricQuadric, n: usize, p: usize, tol: &Tolerances) -> Result<SphereFrame> {
    let d = s.d();
    let report = is_member_s(s, n, p, tol)?;
    if !report.member {
        return Err(rejection(&report, d, n, p));
    }
    let t = takagi_with(s.matrix(), tol)?;
    let v = v_sigma(&t.spectrum, d, n, tol)?;
    let e = &v.matrix * &t.u;
    let frame = SphereFrame::new(d, n, p, e, 1e-9)?;
    let back = frame.quadric_matrix();
    let err = (&back - s.matrix()).frobenius_norm();
    if err > 1e-9 * s.matrix().frobenius_norm().max(1.0) {
        return Err(Error::numeric("ᵗEE does not reproduce S", err));
    }
    Ok(frame)
}

fn rejection(r: &MembershipReport, d: usize, n: usize, p: usize) -> Error {
    Error::Rejected(format!(
        "S is not in S_(d={d}, n={n}, p={p}): {}; spectrum {:?}",
        r.failures.join("; "),
        r.spectrum
    ))
}

/// Result of [`verify_sphere`].
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub orthonormality_residual: f64,
    pub max_containment_residual: f64,
    pub samples: usize,
    pub spectrum: Vec<f64>,
    pub one_multiplicity: usize,
    pub required_one_multiplicity: usize,
    pub full: bool,
    pub passed: bool,
}

/// The sample of affine points used for containment checks.
///
/// Returns `(z, swapped)`; when `swapped` is set the point stands for
/// `-1/z`, evaluated in the other chart (so `z = 0` is the point at infinity).
pub fn verification_points() -> Vec<(C64, bool)> {
    let c = C64::new;
    let mut pts: Vec<(C64, bool)> = [
        c(0.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(2.0, 0.0),
        c(1.0, 1.0),
    ]
    .into_iter()
    .map(|z| (z, false))
    .collect();
    let swapped = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    while pts.len() < VERIFY_SAMPLES - swapped {
        pts.push((point_in_disk(3.0, &mut rng), false));
    }
    pts.push((ZERO, true));
    while pts.len() < VERIFY_SAMPLES {
        pts.push((point_in_disk(1e-3, &mut rng), true));
    }
    pts
}

/// Checks orthonormality, containment of the sphere in the hyperquadric at
/// [`VERIFY_SAMPLES`] points, and linear fullness: the singular value 1 of
/// `ᵗEE` must have multiplicity exactly `max(0, 2d+1-n)`.
pub fn verify_sphere(f: &SphereFrame, tol: &Tolerances) -> Result<VerifyReport> {
    let ortho = f.e.unitarity_defect();
    let pts = verification_points();
    let mut worst: f64 = 0.0;
    for &(z, swapped) in &pts {
        let lift = if swapped {
            veronese::unit_lift_swapped(f.d, f.p, z)?
        } else {
            veronese::unit_lift(f.d, f.p, z)?
        };
        let x = f.e.mul_vec(&lift);
        let q: C64 = x.iter().map(|v| v * v).sum();
        worst = worst.max(q.norm());
    }
    let s = SymmetricQuadric::new(f.d, f.quadric_matrix())?;
    let spectrum = quadrics::spectrum_of(&s, tol)?;
    let required = (2 * f.d + 1).saturating_sub(f.n);
    let one = spectrum.count_near(1.0, tol.cluster);
    Ok(VerifyReport {
        orthonormality_residual: ortho,
        max_containment_residual: worst,
        samples: pts.len(),
        one_multiplicity: one,
        required_one_multiplicity: required,
        full: one == required,
        passed: ortho <= tol.rel && worst <= tol.rel,
        spectrum: spectrum.values,
    })
}

// ── normalization of representatives ──────────────────────────────────────

/// A normalized representative together with the group data producing it.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub quadric: SymmetricQuadric,
    pub g: GroupElement,
    pub lambda: C64,
    pub roots_tried: Vec<C64>,
}

/// Moves `S` (a kernel element for `p = 0`) within its `U(1) x SU(2)` orbit
/// so that `s_11 = s_02 = 0` (for `d >= 3`), then uses the torus and the
/// scalar phase to make the leading entries of the first two nonzero
/// anti-diagonals real and nonnegative.
pub fn normalize_representative(s: &SymmetricQuadric) -> Result<Normalized> {
    let d = s.d();
    let sys = membership_system(d, 0)?;
    let scale = s.matrix().frobenius_norm();
    if sys.residual(s) > 1e-9 * scale.max(1.0) {
        return Err(Error::invalid("normalize_representative needs a quadric containing the curve"));
    }
    if scale == 0.0 {
        return Ok(Normalized {
            quadric: s.clone(),
            g: GroupElement::identity(),
            lambda: ONE,
            roots_tried: Vec::new(),
        });
    }

    let (g, roots) = if d >= 3 { kill_s11(s)? } else { (GroupElement::identity(), Vec::new()) };
    let moved = s.transform(&g, ONE)?;
    let (theta, lambda) = phase_normalization(&moved);
    let torus = GroupElement::torus(theta);
    let out = moved.transform(&torus, lambda)?;
    Ok(Normalized {
        quadric: out,
        g: g.compose(&torus),
        lambda,
        roots_tried: roots,
    })
}

/// Representative entry of anti-diagonal `t`: `(t/2, t/2)` for even `t`,
/// otherwise the entry nearest the top-left corner.
fn representative(d: usize, t: usize) -> (usize, usize) {
    if t % 2 == 0 {
        (t / 2, t / 2)
    } else {
        let i = t.saturating_sub(d);
        (i, t - i)
    }
}

/// Torus angle and unit scalar making the representative entries of the
/// first two nonzero anti-diagonals real and nonnegative. The torus
/// `diag(e^{iθ}, e^{-iθ})` multiplies anti-diagonal `t` by `e^{iθ(2t-2d)}`.
fn phase_normalization(s: &SymmetricQuadric) -> (f64, C64) {
    let d = s.d();
    let floor = 1e-12 * s.matrix().frobenius_norm();
    let nonzero: Vec<(usize, C64)> = (0..=2 * d)
        .filter_map(|t| {
            let (i, j) = representative(d, t);
            let v = s.entry(i, j);
            (v.norm() > floor).then_some((t, v))
        })
        .collect();
    match nonzero.as_slice() {
        [] => (0.0, ONE),
        [(_, v)] => (0.0, C64::from_polar(1.0, -v.arg())),
        [(t1, v1), (t2, v2), ..] => {
            // arg(v1) + θ(2t1-2d) + ψ = 0 and arg(v2) + θ(2t2-2d) + ψ = 0.
            let theta = (v1.arg() - v2.arg()) / (2.0 * (*t2 as f64 - *t1 as f64));
            let psi = -v1.arg() - theta * (2.0 * *t1 as f64 - 2.0 * d as f64);
            (theta, C64::from_polar(1.0, psi))
        }
    }
}

/// Finds `g` with `(ᵗρ(g) S ρ(g))_{11} = 0`. With `a = 1/√(1+|t|²)` and
/// `b = t a`, that entry divided by `a^{2d-4}` is a polynomial of degree
/// `2d-4` in `t` or in `t̄` (which one depends on the side of the action,
/// so both are tried); its roots give the candidates.
fn kill_s11(s: &SymmetricQuadric) -> Result<(GroupElement, Vec<C64>)> {
    let d = s.d();
    let deg = 2 * d - 4;
    let scale = s.matrix().frobenius_norm();
    let tol = 1e-9 * scale;
    if s.entry(1, 1).norm() <= tol {
        return Ok((GroupElement::identity(), vec![ZERO]));
    }

    let mut tried = Vec::new();
    for conj in [false, true] {
        let coeffs = match fit_polynomial(s, deg, conj)? {
            Some(c) => c,
            None => continue,
        };
        let cmax = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if cmax <= 1e-13 * scale {
            return Ok((GroupElement::identity(), tried));
        }
        let mut eff = deg;
        while eff > 0 && coeffs[eff].norm() <= 1e-11 * cmax {
            eff -= 1;
        }
        let mut candidates: Vec<Option<C64>> = poly_roots(&coeffs[..=eff]).into_iter().map(Some).collect();
        if eff < deg {
            candidates.push(None);
        }
        let mut best: Option<(f64, f64, GroupElement)> = None;
        for cand in candidates {
            let g = match cand {
                Some(x) => element_from_parameter(if conj { x.conj() } else { x }),
                None => GroupElement::chart_swap(),
            };
            tried.push(cand.unwrap_or(C64::new(f64::INFINITY, 0.0)));
            let moved = s.transform(&g, ONE)?;
            if moved.entry(1, 1).norm() > tol || moved.entry(0, 2).norm() > tol {
                continue;
            }
            let next = moved.entry(0, 3.min(d)).norm();
            let size = cand.map_or(f64::INFINITY, |t| t.norm());
            let better = match &best {
                None => true,
                Some((bn, bs, _)) => next < bn - 1e-12 * scale || ((next - bn).abs() <= 1e-12 * scale && size < *bs),
            };
            if better {
                best = Some((next, size, g));
            }
        }
        if let Some((_, _, g)) = best {
            return Ok((g, tried));
        }
    }
    Err(Error::numeric(
        format!("no root of the normalizing polynomial cleared s_11; roots tried: {tried:?}"),
        s.entry(1, 1).norm(),
    ))
}

/// `a = 1/√(1+|t|²)`, `b = t a`.
fn element_from_parameter(t: C64) -> GroupElement {
    let a = 1.0 / (1.0 + t.norm_sqr()).sqrt();
    GroupElement { a: C64::new(a, 0.0), b: t * a }
}

fn scaled_s11(s: &SymmetricQuadric, t: C64, deg: usize) -> Result<C64> {
    let g = element_from_parameter(t);
    let moved = s.transform(&g, ONE)?;
    Ok(moved.entry(1, 1) / g.a.re.powi(deg as i32))
}

/// Coefficients of the normalizing polynomial in `x` (`x = t`, or `x = t̄`
/// when `conj`), from samples on the unit circle; `None` if the samples are
/// not those of a polynomial of the expected degree in that variable.
fn fit_polynomial(s: &SymmetricQuadric, deg: usize, conj: bool) -> Result<Option<Vec<C64>>> {
    let m = deg + 1;
    let var = |t: C64| if conj { t.conj() } else { t };
    let samples: Vec<C64> = (0..m)
        .map(|k| {
            let x = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64);
            scaled_s11(s, var(x), deg)
        })
        .collect::<Result<_>>()?;
    let coeffs: Vec<C64> = (0..m)
        .map(|l| {
            let mut acc = ZERO;
            for (k, h) in samples.iter().enumerate() {
                acc += h * C64::from_polar(1.0, -std::f64::consts::TAU * (k * l) as f64 / m as f64);
            }
            acc / m as f64
        })
        .collect();
    let scale = s.matrix().frobenius_norm();
    for t in [C64::new(0.3, 0.2), C64::new(-1.7, 0.9), C64::new(0.1, -2.5)] {
        let want = scaled_s11(s, t, deg)?;
        let x = var(t);
        let got = horner(&coeffs, x);
        let size = (1.0 + x.norm()).powi(deg as i32);
        if (want - got).norm() > 1e-8 * scale * size {
            return Ok(None);
        }
    }
    Ok(Some(coeffs))
}

fn horner(coeffs: &[C64], x: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * x + c)
}

/// Roots of `Σ c_l x^l` (Durand-Kerner iteration, then Newton polishing).
pub(crate) fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C64::from_polar(0.4 * radius.min(10.0) + 0.5, 0.9);
    let mut roots: Vec<C64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let num = horner(&monic, roots[i]);
            let mut den = ONE;
            for j in 0..deg {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            if den.norm() == 0.0 {
                den = C64::new(1e-12, 0.0);
            }
            let step = num / den;
            roots[i] -= step;
            delta = delta.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv: Vec<C64> = (1..=deg).map(|l| monic[l] * l as f64).collect();
    for r in roots.iter_mut() {
        for _ in 0..5 {
            let dp = horner(&deriv, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = horner(&monic, *r) / dp;
            *r -= step;
            if step.norm() <= 1e-16 * (1.0 + r.norm()) {
                break;
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{svd, SingularSpectrum};
    use crate::quadrics::random_kernel_element;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spectrum(vals: &[f64]) -> SingularSpectrum {
        SingularSpectrum::new(vals.to_vec(), 1e-8).unwrap()
    }

    #[test]
    fn v_sigma_all_zero_degree_one() {
        let v = v_sigma(&spectrum(&[0.0, 0.0]), 1, 3, &Tolerances::default()).unwrap().matrix;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = ComplexMatrix::from_rows(&[
            vec![c(h, 0.0), ZERO],
            vec![ZERO, c(h, 0.0)],
            vec![c(0.0, h), ZERO],
            vec![ZERO, c(0.0, h)],
        ]);
        assert!((&v - &want).frobenius_norm() < 1e-15);
    }

    #[test]
    fn v_sigma_square_case_is_identity() {
        let v = v_sigma(&spectrum(&[1.0; 4]), 3, 3, &Tolerances::default()).unwrap().matrix;
        assert_eq!(v, ComplexMatrix::identity(4));
    }

    #[test]
    fn v_sigma_degree_three_h35() {
        let vals = [1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0];
        let v = v_sigma(&spectrum(&vals), 3, 5, &Tolerances::default()).unwrap().matrix;
        assert_eq!((v.rows(), v.cols()), (6, 4));
        assert!(v.unitarity_defect() < 1e-15);
        let g = &v.transpose() * &v;
        assert!((&g - &ComplexMatrix::diag_real(&vals)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn v_sigma_rejects_multiplicity_deficit() {
        let r = v_sigma(&spectrum(&[0.2, 0.5, 1.0, 1.0]), 3, 4, &Tolerances::default());
        assert!(matches!(r, Err(Error::InvalidInput(m)) if m.contains("invalid spectrum")));
    }

    #[test]
    fn isotropic_line() {
        let s = SymmetricQuadric::zero(1).unwrap();
        let f = build_sphere(&s, 3, 0, &Tolerances::default()).unwrap();
        let rep = verify_sphere(&f, &Tolerances::default()).unwrap();
        assert!(rep.passed && rep.full);
        // Both columns carry the (1, i)/√2 pattern, up to the unitary choice.
        let x = f.unit_point(c(0.4, -0.2)).unwrap();
        let q: C64 = x.iter().map(|v| v * v).sum();
        assert!(q.norm() < 1e-15);
    }

    #[test]
    fn reducible_antidiagonal_is_not_full() {
        let s = SymmetricQuadric::new(2, ComplexMatrix::antidiag_real(&[1.0, -1.0, 1.0])).unwrap();
        let f = build_sphere(&s, 5, 0, &Tolerances::default()).unwrap();
        let rep = verify_sphere(&f, &Tolerances::default()).unwrap();
        assert!(rep.passed);
        assert!(!rep.full);
        assert_eq!(rep.one_multiplicity, 3);
    }

    #[test]
    fn non_member_is_rejected_and_fails_containment() {
        let s = SymmetricQuadric::new(2, ComplexMatrix::identity(3).scale(c(0.5, 0.0))).unwrap();
        assert!(matches!(build_sphere(&s, 5, 0, &Tolerances::default()), Err(Error::Rejected(_))));
        let t = crate::linalg::takagi(s.matrix()).unwrap();
        let v = v_sigma(&t.spectrum, 2, 5, &Tolerances::default()).unwrap();
        let f = SphereFrame::new(2, 5, 0, &v.matrix * &t.u, 1e-12).unwrap();
        let rep = verify_sphere(&f, &Tolerances::default()).unwrap();
        assert!(rep.max_containment_residual > 1e-2);
        assert!(!rep.passed);
    }

    #[test]
    fn sample_set_composition() {
        let pts = verification_points();
        assert_eq!(pts.len(), VERIFY_SAMPLES);
        assert_eq!(pts.iter().filter(|p| p.1).count(), 10);
        assert!(pts.iter().filter(|p| !p.1).all(|p| p.0.norm() <= 3.0));
    }

    #[test]
    fn roots_of_known_polynomial() {
        // (x - 1)(x + 2)(x - i) = x³ + (1 - i)x² + (-2 - i)x + 2i
        let coeffs = [c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), ONE];
        let mut r = poly_roots(&coeffs);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (got, want) in r.iter().zip([c(-2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn normalization_kills_entries_and_keeps_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [3, 4, 5] {
            let s = random_kernel_element(d, 0, &mut rng).unwrap();
            let out = normalize_representative(&s).unwrap().quadric;
            let scale = s.matrix().frobenius_norm();
            for (i, j) in [(0, 0), (0, 1), (1, 1), (0, 2), (d, d), (d - 1, d)] {
                assert!(out.entry(i, j).norm() <= 1e-9 * scale, "d={d} ({i},{j})");
            }
            let a = svd(s.matrix()).unwrap().spectrum;
            let b = svd(out.matrix()).unwrap().spectrum;
            assert!(a.max_abs_diff(&b.values) < 1e-10);
        }
    }
}
