//! Veronese maps `Z_{d,p}`, binomial machinery and the irreducible
//! representations `ρ^{d/2}` of SU(2).

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{random::complex_gaussian, ComplexMatrix, C64, ONE, ZERO};

/// Largest supported degree; binomials up to `C(60, 30)` are exact in `u128`.
pub const MAX_DEGREE: usize = 60;
/// Affine evaluations reject `|z|` above this; use the homogeneous form.
pub const MAX_AFFINE: f64 = 1e8;

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k) as f64
}

/// `√C(d, k)` for `k = 0..=d`.
pub fn sqrt_binomials(d: usize) -> Vec<f64> {
    (0..=d).map(|k| binomial_f64(d, k).sqrt()).collect()
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    ((n - k + 1)..=n).map(|x| x as f64).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VeroneseParams {
    pub d: usize,
    pub p: usize,
}

impl VeroneseParams {
    pub fn new(d: usize, p: usize) -> Result<Self> {
        check_degree(d)?;
        if p > d {
            return Err(Error::invalid(format!("harmonic index p = {p} exceeds degree d = {d}")));
        }
        Ok(VeroneseParams { d, p })
    }
}

pub(crate) fn check_degree(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::invalid(format!("degree must lie in 1..={MAX_DEGREE}, got {d}")));
    }
    Ok(())
}

fn check_affine(z: C64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::invalid("affine coordinate is not finite"));
    }
    if z.norm() > MAX_AFFINE {
        return Err(Error::invalid(format!(
            "|z| = {:.3e} exceeds {MAX_AFFINE:.0e}; use the homogeneous form or the swapped chart",
            z.norm()
        )));
    }
    Ok(())
}

/// `Z_{d,0}(z)`, component `k` equal to `√C(d,k) z^k`.
pub fn veronese_holomorphic(d: usize, z: C64) -> Result<Vec<C64>> {
    check_degree(d)?;
    check_affine(z)?;
    let sb = sqrt_binomials(d);
    let mut pw = ONE;
    Ok(sb
        .iter()
        .map(|&c| {
            let out = pw * c;
            pw *= z;
            out
        })
        .collect())
}

/// Homogeneous form: component `k` equal to `√C(d,k) u^{d-k} v^k`.
pub fn veronese_homogeneous(d: usize, u: C64, v: C64) -> Result<Vec<C64>> {
    check_degree(d)?;
    let sb = sqrt_binomials(d);
    Ok((0..=d).map(|k| u.powu((d - k) as u32) * v.powu(k as u32) * sb[k]).collect())
}

/// `∂^k Z_{d,0} / ∂z^k`, by exact differentiation of the monomials.
pub fn holomorphic_derivative(d: usize, k: usize, z: C64) -> Result<Vec<C64>> {
    check_degree(d)?;
    check_affine(z)?;
    let sb = sqrt_binomials(d);
    Ok((0..=d)
        .map(|j| {
            if j < k {
                ZERO
            } else {
                z.powu((j - k) as u32) * (sb[j] * falling(j, k))
            }
        })
        .collect())
}

/// `Z_{d,p}(z)` in closed form:
/// `p!/(1+|z|²)^p √C(d,l) Σ_k (-1)^k C(l,p-k) C(d-l,k) z^{l-p+k} z̄^k`.
pub fn veronese_map(d: usize, p: usize, z: C64) -> Result<Vec<C64>> {
    VeroneseParams::new(d, p)?;
    check_affine(z)?;
    Ok(veronese_unchecked(d, p, z))
}

pub(crate) fn veronese_unchecked(d: usize, p: usize, z: C64) -> Vec<C64> {
    let sb = sqrt_binomials(d);
    let zb = z.conj();
    let pref = factorial(p) / (1.0 + z.norm_sqr()).powi(p as i32);
    (0..=d)
        .map(|l| {
            let kmin = p.saturating_sub(l);
            let kmax = p.min(d - l);
            let mut acc = ZERO;
            for k in kmin..=kmax {
                let c = binomial_f64(l, p - k) * binomial_f64(d - l, k);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += z.powu((l + k - p) as u32) * zb.powu(k as u32) * (sign * c);
            }
            acc * (pref * sb[l])
        })
        .collect()
}

/// `Z_{d,0}, ..., Z_{d,d}` at `z`.
pub fn veronese_sequence(d: usize, z: C64) -> Result<Vec<Vec<C64>>> {
    check_degree(d)?;
    check_affine(z)?;
    Ok((0..=d).map(|p| veronese_unchecked(d, p, z)).collect())
}

/// `|Z_{d,p}|² = d! p!/(d-p)! (1+|z|²)^{d-2p}`.
pub fn norm_sq(d: usize, p: usize, z: C64) -> f64 {
    factorial(d) * factorial(p) / factorial(d - p) * (1.0 + z.norm_sqr()).powi(d as i32 - 2 * p as i32)
}

/// `Z_{d,p}/|Z_{d,p}|` at an affine point.
pub fn unit_lift(d: usize, p: usize, z: C64) -> Result<Vec<C64>> {
    let v = veronese_map(d, p, z)?;
    let n = crate::linalg::norm(&v);
    Ok(v.into_iter().map(|x| x / n).collect())
}

/// Unit lift at `w = -1/z`, valid up to a phase, computed in the swapped
/// chart so that `w` may be arbitrarily large (including infinity, `z = 0`).
pub fn unit_lift_swapped(d: usize, p: usize, z: C64) -> Result<Vec<C64>> {
    let base = unit_lift(d, p, z)?;
    let swap = su2_rep_matrix(d, &GroupElement::chart_swap())?;
    Ok(swap.transpose().mul_vec(&base))
}

/// Gaussian curvature `4/(d + 2p(d-p))` and Kähler angle cosine
/// `(d-2p)/(2p(d-p)+d)` of `Z_{d,p}`.
pub fn curvature_and_angle(d: usize, p: usize) -> Result<(f64, f64)> {
    VeroneseParams::new(d, p)?;
    let denom = (d + 2 * p * (d - p)) as f64;
    Ok((4.0 / denom, (d as f64 - 2.0 * p as f64) / denom))
}

/// `g = [[a, b], [-b̄, ā]]` in SU(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub a: C64,
    pub b: C64,
}

impl GroupElement {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let n = a.norm_sqr() + b.norm_sqr();
        if !n.is_finite() || (n - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!("|a|² + |b|² = {n} is not 1")));
        }
        Ok(GroupElement { a, b })
    }

    pub fn identity() -> Self {
        GroupElement { a: ONE, b: ZERO }
    }

    /// `diag(e^{iθ}, e^{-iθ})`.
    pub fn torus(theta: f64) -> Self {
        GroupElement {
            a: C64::from_polar(1.0, theta),
            b: ZERO,
        }
    }

    /// `a = 0, b = 1`; acts on the affine coordinate as `z ↦ -1/z`.
    pub fn chart_swap() -> Self {
        GroupElement { a: ZERO, b: ONE }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let a = complex_gaussian(rng);
        let b = complex_gaussian(rng);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        GroupElement { a: a / n, b: b / n }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * other.a - self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// The substitution `(u, v) ↦ (āu - bv, b̄u + av)`.
    pub fn substitute(&self, u: C64, v: C64) -> (C64, C64) {
        (self.a.conj() * u - self.b * v, self.b.conj() * u + self.a * v)
    }
}

/// `ρ^{d/2}(g)`, determined by `ᵗρ Z_d(u,v) = Z_d(āu - bv, b̄u + av)`.
///
/// Entry `(k, l)` is `√C(d,l)/√C(d,k)` times the coefficient of
/// `u^{d-k} v^k` in `(āu - bv)^{d-l} (b̄u + av)^l`. With this convention
/// `ρ(g₁g₂) = ρ(g₁) ρ(g₂)`.
pub fn su2_rep_matrix(d: usize, g: &GroupElement) -> Result<ComplexMatrix> {
    check_degree(d)?;
    let g = GroupElement::new(g.a, g.b)?;
    let sb = sqrt_binomials(d);
    let first = [g.a.conj(), -g.b];
    let second = [g.b.conj(), g.a];
    let mut rho = ComplexMatrix::zeros(d + 1, d + 1);
    for l in 0..=d {
        let mut poly = vec![ONE];
        for _ in 0..(d - l) {
            poly = mul_linear(&poly, first);
        }
        for _ in 0..l {
            poly = mul_linear(&poly, second);
        }
        for k in 0..=d {
            rho[(k, l)] = poly[k] * (sb[l] / sb[k]);
        }
    }
    Ok(rho)
}

/// Multiplies a polynomial in `v` (coefficient `k` of `u^{deg-k} v^k`) by
/// `c₀ u + c₁ v`.
fn mul_linear(poly: &[C64], c: [C64; 2]) -> Vec<C64> {
    let mut out = vec![ZERO; poly.len() + 1];
    for (k, &x) in poly.iter().enumerate() {
        out[k] += x * c[0];
        out[k + 1] += x * c[1];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot_conj, norm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        let s: u128 = (0..=5).map(|k| binomial(5, k)).sum();
        assert_eq!(s, 32);
    }

    #[test]
    fn holomorphic_degree_three() {
        let z = c(0.4, -1.2);
        let v = veronese_holomorphic(3, z).unwrap();
        let r3 = 3f64.sqrt();
        let want = [ONE, z * r3, z * z * r3, z * z * z];
        for (a, b) in v.iter().zip(&want) {
            assert!((a - b).norm() < 1e-14);
        }
        assert_eq!(veronese_holomorphic(1, ZERO).unwrap(), vec![ONE, ZERO]);
        let v5 = veronese_holomorphic(5, ONE).unwrap();
        assert!((norm(&v5).powi(2) - 32.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_far_points_and_bad_degree() {
        assert!(veronese_holomorphic(3, c(2e8, 0.0)).is_err());
        assert!(veronese_holomorphic(0, ZERO).is_err());
        assert!(veronese_map(3, 4, ZERO).is_err());
    }

    #[test]
    fn sequence_at_origin_degree_two() {
        let s = veronese_sequence(2, ZERO).unwrap();
        let r2 = 2f64.sqrt();
        let want1 = [ZERO, c(r2, 0.0), ZERO];
        let want2 = [ZERO, ZERO, c(2.0, 0.0)];
        for k in 0..3 {
            assert!((s[1][k] - want1[k]).norm() < 1e-15);
            assert!((s[2][k] - want2[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn norms_and_orthogonality() {
        for d in 1..=8 {
            let z = c(0.3 * d as f64 - 1.0, 0.7);
            let s = veronese_sequence(d, z).unwrap();
            for p in 0..=d {
                let n2 = norm(&s[p]).powi(2);
                let want = norm_sq(d, p, z);
                assert!((n2 - want).abs() <= 1e-10 * want, "d={d} p={p}");
                for q in 0..p {
                    let ip = dot_conj(&s[q], &s[p]).norm();
                    assert!(ip <= 1e-10 * (n2 * norm_sq(d, q, z)).sqrt());
                }
            }
        }
    }

    #[test]
    fn curvature_examples() {
        let (k, c0) = curvature_and_angle(5, 0).unwrap();
        assert!((k - 0.8).abs() < 1e-15 && (c0 - 1.0).abs() < 1e-15);
        let (k, c0) = curvature_and_angle(6, 3).unwrap();
        assert!((k - 8.0 / 48.0).abs() < 1e-15 && c0.abs() < 1e-15);
        let (_, c0) = curvature_and_angle(4, 4).unwrap();
        assert!((c0 + 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_representation() {
        let r = su2_rep_matrix(4, &GroupElement::identity()).unwrap();
        assert_eq!(r, ComplexMatrix::identity(5));
    }

    #[test]
    fn torus_representation_degree_three() {
        let th = 0.37;
        let r = su2_rep_matrix(3, &GroupElement::torus(th)).unwrap();
        let want = ComplexMatrix::diag(&[
            C64::from_polar(1.0, -3.0 * th),
            C64::from_polar(1.0, -th),
            C64::from_polar(1.0, th),
            C64::from_polar(1.0, 3.0 * th),
        ]);
        assert!((&r - &want).frobenius_norm() < 1e-14);
    }

    #[test]
    fn degree_one_by_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = GroupElement::random(&mut rng);
        let r = su2_rep_matrix(1, &g).unwrap();
        // ᵗρ (u, v) = (āu - bv, b̄u + av) at (1,0) and (0,1) fixes every entry.
        let (x0, y0) = g.substitute(ONE, ZERO);
        let (x1, y1) = g.substitute(ZERO, ONE);
        let want = ComplexMatrix::from_rows(&[vec![x0, y0], vec![x1, y1]]);
        assert!((&r - &want).frobenius_norm() < 1e-15);
    }

    #[test]
    fn non_unit_element_rejected() {
        assert!(su2_rep_matrix(2, &GroupElement { a: c(1.0, 0.0), b: c(0.5, 0.0) }).is_err());
    }

    #[test]
    fn swapped_chart_matches_direct_evaluation() {
        for (d, p) in [(3, 0), (4, 1), (5, 2), (2, 2)] {
            let z = c(0.2, -0.1);
            let w = -ONE / z;
            let far = unit_lift_swapped(d, p, z).unwrap();
            let direct = unit_lift(d, p, w).unwrap();
            let overlap = dot_conj(&direct, &far).norm();
            assert!((overlap - 1.0).abs() < 1e-12, "d={d} p={p} overlap={overlap}");
        }
    }
}
