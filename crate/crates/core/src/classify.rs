//! Low-degree classification: the degree-3 moduli chart `(y, z)` with its
//! closed-form singular values, recovery map and boundary quartic, and the
//! small-degree facts for `d <= 5`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{svd_with, takagi_with, ComplexMatrix, SingularSpectrum, Tolerances, C64, ZERO};
use crate::quadrics::{is_member_s, kernel_dimension, membership_system, random_combination, SymmetricQuadric};
use crate::veronese::binomial;

/// Band around 1 used by [`deg3_region`].
pub const REGION_TOL: f64 = 1e-9;
/// Bound on the quartic residual for points classified on the boundary.
pub const QUARTIC_TOL: f64 = 1e-8;
/// Alternating-projection rounds per refined candidate.
pub const PROJECTION_ROUNDS: usize = 2000;
/// Distance the d = 4 control search must reach. Alternating projections
/// approach the d = 4 solution set only sublinearly, so the control is
/// judged by convergence toward it rather than by the strict `1e-8` hit.
pub const CONTROL_DISTANCE: f64 = 1e-3;
/// Seed of the randomized `S_{5,5}` search.
pub const SEARCH_SEED: u64 = 0x55_5EA2C4;

/// A point `(y, z)` of the degree-3 moduli chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint3 {
    pub y: f64,
    pub z: f64,
}

impl ModuliPoint3 {
    pub fn new(y: f64, z: f64) -> Result<Self> {
        if !(y.is_finite() && z.is_finite()) || y < 0.0 || z < 0.0 {
            return Err(Error::invalid(format!("(y, z) = ({y}, {z}) must be finite and nonnegative")));
        }
        Ok(ModuliPoint3 { y, z })
    }
}

/// The normal form
/// `[[0, 0, 0, 3y/2], [0, 0, -y/2, -√3 z/2], [0, -y/2, z, 0], [3y/2, -√3 z/2, 0, 0]]`.
pub fn deg3_matrix(m: ModuliPoint3) -> SymmetricQuadric {
    let (y, z) = (m.y, m.z);
    let r3 = 3f64.sqrt();
    let rows: [[f64; 4]; 4] = [
        [0.0, 0.0, 0.0, 1.5 * y],
        [0.0, 0.0, -0.5 * y, -0.5 * r3 * z],
        [0.0, -0.5 * y, z, 0.0],
        [1.5 * y, -0.5 * r3 * z, 0.0, 0.0],
    ];
    let refs: Vec<&[f64]> = rows.iter().map(|r| &r[..]).collect();
    SymmetricQuadric::new(3, ComplexMatrix::from_real_rows(&refs)).expect("the normal form is symmetric")
}

/// Characteristic polynomial of [`deg3_matrix`] at `λ`:
/// `λ⁴ - zλ³ - (3z²/4 + 5y²/2)λ² + (3z³/4 + 9y²z/4)λ + 9y⁴/16`.
pub fn deg3_char_poly(m: ModuliPoint3, l: f64) -> f64 {
    let (y, z) = (m.y, m.z);
    let (y2, z2) = (y * y, z * z);
    l.powi(4) - z * l.powi(3) - (0.75 * z2 + 2.5 * y2) * l * l + (0.75 * z2 * z + 2.25 * y2 * z) * l
        + 9.0 / 16.0 * y2 * y2
}

/// Closed-form eigenvalues `(λ_1, λ_2, λ_3, λ_4)` of [`deg3_matrix`].
pub fn deg3_eigenvalues(m: ModuliPoint3) -> Result<[f64; 4]> {
    let (y, z) = (m.y, m.z);
    let root = (y * y + z * z / 4.0).sqrt();
    let a = z / 4.0;
    let b = 4.0 * y * y + 2.0 * z * z;
    let c = 4.0 * z * root;
    let d = root / 2.0;
    let plus = (b + c / 2.0).sqrt();
    let minus_arg = b - c / 2.0;
    // B - C/2 >= 0 holds exactly; allow roundoff below zero only.
    if minus_arg < -1e-12 * b.max(1.0) {
        return Err(Error::numeric("B - C/2 is negative", minus_arg));
    }
    let minus = minus_arg.max(0.0).sqrt();
    Ok([a - plus / 2.0 - d, a + plus / 2.0 - d, a - minus / 2.0 + d, a + minus / 2.0 + d])
}

/// `(σ_1, σ_2, σ_3, σ_4) = (-λ_3, λ_2, -λ_1, λ_4)`.
///
/// On the axes two of these coincide and roundoff may swap them or leave
/// `σ_1` at a tiny negative value, so the result is clamped and sorted.
pub fn deg3_singular_values(m: ModuliPoint3) -> Result<[f64; 4]> {
    let l = deg3_eigenvalues(m)?;
    let mut s = [-l[2], l[1], -l[0], l[3]].map(|x| x.max(0.0));
    s.sort_by(f64::total_cmp);
    Ok(s)
}

/// [`deg3_singular_values`] as a clustered spectrum.
pub fn deg3_spectrum(m: ModuliPoint3, tol: &Tolerances) -> Result<SingularSpectrum> {
    SingularSpectrum::new(deg3_singular_values(m)?.to_vec(), tol.cluster)
}

/// Inverse of [`deg3_singular_values`]:
/// `z = σ_4 - σ_3 + σ_2 - σ_1` and `9y⁴/16 = σ_1 σ_2 σ_3 σ_4`.
pub fn deg3_recover(sigma: &[f64; 4]) -> Result<ModuliPoint3> {
    if sigma.iter().any(|s| !s.is_finite() || *s < 0.0) || sigma.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("expected four nondecreasing nonnegative singular values"));
    }
    let z = sigma[3] - sigma[2] + sigma[1] - sigma[0];
    let prod: f64 = sigma.iter().product();
    let y = (16.0 * prod / 9.0).powf(0.25);
    let m = ModuliPoint3::new(y, z.max(0.0))?;
    let back = deg3_singular_values(m)?;
    let err = back.iter().zip(sigma).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if z < -1e-8 || err > 1e-8 {
        return Err(Error::Rejected(format!(
            "spectrum {sigma:?} is not the spectrum of a degree-3 normal form (round trip error {err:.3e})"
        )));
    }
    Ok(m)
}

/// `9y⁴ + 12z³ + 36y²z - 40y² - 12z² - 16z + 16`.
pub fn eta_quartic(y: f64, z: f64) -> f64 {
    let y2 = y * y;
    9.0 * y2 * y2 + 12.0 * z * z * z + 36.0 * y2 * z - 40.0 * y2 - 12.0 * z * z - 16.0 * z + 16.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region3 {
    /// `σ_4 < 1`: spheres linearly full in `Q_6`.
    #[serde(rename = "interior-H37")]
    InteriorH37,
    /// `σ_4 = 1 > σ_3`: the boundary curve, spheres in `Q_5`.
    #[serde(rename = "boundary-eta-H36")]
    BoundaryEtaH36,
    /// `σ_4 = σ_3 = 1`: the single point `(2/3, 0)`.
    #[serde(rename = "H35-point")]
    H35Point,
    #[serde(rename = "outside")]
    Outside,
}

impl Region3 {
    pub fn label(&self) -> &'static str {
        match self {
            Region3::InteriorH37 => "interior-H37",
            Region3::BoundaryEtaH36 => "boundary-eta-H36",
            Region3::H35Point => "H35-point",
            Region3::Outside => "outside",
        }
    }
}

/// Classifies `(y, z)` by `σ_4` and `σ_3` against 1 with band [`REGION_TOL`].
pub fn deg3_region(m: ModuliPoint3) -> Result<Region3> {
    let s = deg3_singular_values(m)?;
    let region = if s[3] < 1.0 - REGION_TOL {
        Region3::InteriorH37
    } else if s[3] > 1.0 + REGION_TOL {
        Region3::Outside
    } else if (s[2] - 1.0).abs() <= REGION_TOL {
        Region3::H35Point
    } else {
        Region3::BoundaryEtaH36
    };
    if region == Region3::BoundaryEtaH36 || region == Region3::H35Point {
        let q = eta_quartic(m.y, m.z);
        if q.abs() > QUARTIC_TOL {
            return Err(Error::numeric("point with σ_4 = 1 is off the boundary quartic", q.abs()));
        }
    }
    Ok(region)
}

/// A point of the boundary curve `σ_4(y, z) = 1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EtaPoint {
    pub z: f64,
    pub y: f64,
    pub sigma4: f64,
    pub quartic: f64,
}

/// Solves `σ_4(y, z) = 1` for `y` by bisection at `samples` equally spaced
/// `z` in `[0, 1]`.
pub fn eta_curve(samples: usize) -> Result<Vec<EtaPoint>> {
    let sigma4 = |y: f64, z: f64| -> Result<f64> { Ok(deg3_singular_values(ModuliPoint3::new(y, z)?)?[3]) };
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let z = if samples == 1 { 0.0 } else { i as f64 / (samples - 1) as f64 };
        // σ_4(0, z) = z <= 1 and σ_4 grows without bound in y.
        let (mut lo, mut hi) = (0.0, 1.0);
        while sigma4(hi, z)? < 1.0 {
            hi *= 2.0;
        }
        if sigma4(lo, z)? >= 1.0 {
            hi = lo;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if sigma4(mid, z)? < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi.max(1.0) {
                break;
            }
        }
        let y = 0.5 * (lo + hi);
        out.push(EtaPoint {
            z,
            y,
            sigma4: sigma4(y, z)?,
            quartic: eta_quartic(y, z),
        });
    }
    Ok(out)
}

pub fn eta_csv(points: &[EtaPoint]) -> String {
    let mut s = String::from("z,y,sigma4,quartic_residual\n");
    for p in points {
        s.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", p.z, p.y, p.sigma4, p.quartic));
    }
    s
}

/// `min (σ_4 - σ_2)/σ_4` over the quarter circle `y² + z² = 1`, `y, z >= 0`
/// (the ratio is scale invariant), by dense sampling and golden-section
/// refinement. Returns `(min ratio, angle)`.
pub fn deg3_triple_gap_min() -> Result<(f64, f64)> {
    let ratio = |t: f64| -> Result<f64> {
        let s = deg3_singular_values(ModuliPoint3::new(t.sin().max(0.0), t.cos().max(0.0))?)?;
        Ok((s[3] - s[1]) / s[3])
    };
    let n = 2000;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=n {
        let t = i as f64 * h;
        let r = ratio(t)?;
        if r < best.0 {
            best = (r, t);
        }
    }
    let (mut a, mut b) = ((best.1 - h).max(0.0), (best.1 + h).min(std::f64::consts::FRAC_PI_2));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if ratio(c)? < ratio(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    let t = 0.5 * (a + b);
    let r = ratio(t)?;
    Ok(if r < best.0 { (r, t) } else { best })
}

/// Outcome of a search for unitary symmetric members of the kernel.
#[derive(Debug, Clone, Serialize)]
pub struct UnitarySearch {
    pub d: usize,
    pub trials: usize,
    pub refined: usize,
    /// Smallest `(σ_max - σ_min)/σ_max` among random kernel elements.
    pub best_random_gap: f64,
    /// Smallest distance `‖K - W‖_F / √(d+1)` between a kernel element `K`
    /// and a unitary symmetric `W` reached by alternating projections.
    pub best_refined_distance: f64,
    /// Whether some candidate came within `1e-8`.
    pub found: bool,
}

/// Real orthonormal kernel basis, flattened to coordinate vectors.
fn kernel_coords(d: usize) -> Result<(Vec<SymmetricQuadric>, Vec<Vec<f64>>)> {
    let basis = membership_system(d, 0)?.kernel_basis()?;
    let coords = basis.iter().map(|b| b.to_real_coords()).collect();
    Ok((basis, coords))
}

fn project(d: usize, coords: &[Vec<f64>], s: &ComplexMatrix) -> Result<ComplexMatrix> {
    let q = SymmetricQuadric::new(d, s.clone())?;
    let x = q.to_real_coords();
    let mut out = vec![0.0; x.len()];
    for b in coords {
        let c: f64 = b.iter().zip(&x).map(|(u, v)| u * v).sum();
        for (o, v) in out.iter_mut().zip(b) {
            *o += c * v;
        }
    }
    Ok(SymmetricQuadric::from_real_coords(d, &out)?.into_matrix())
}

/// Nearest unitary symmetric matrix `ᵗU U` for `S = ᵗU Σ U`.
fn nearest_unitary_symmetric(s: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let t = takagi_with(s, tol)?;
    let w = &t.u.transpose() * &t.u;
    // Symmetrize away roundoff.
    Ok(ComplexMatrix::from_fn(w.rows(), w.cols(), |i, j| (w[(i, j)] + w[(j, i)]) * 0.5))
}

/// Looks for `S` in the `p = 0` kernel with every singular value equal to 1.
///
/// `trials` random kernel elements are scored by their normalized singular
/// value gap; the first `refine` of them are also fed to 50 rounds of
/// alternating projections between the kernel and the unitary symmetric
/// matrices. This is evidence, not a proof: a miss only means no candidate
/// was found within the budget.
pub fn search_unitary_kernel(d: usize, trials: usize, refine: usize, seed: u64) -> Result<UnitarySearch> {
    let tol = Tolerances::default();
    let (basis, coords) = kernel_coords(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_gap = f64::INFINITY;
    let mut best_dist = f64::INFINITY;
    let scale = ((d + 1) as f64).sqrt();
    for t in 0..trials {
        if basis.is_empty() {
            break;
        }
        let k = random_combination(d, &basis, &mut rng)?.into_matrix();
        let vals = svd_with(&k, &tol)?.spectrum.values;
        let max = vals.last().copied().unwrap_or(0.0);
        if max > 0.0 {
            best_gap = best_gap.min((max - vals[0]) / max);
        }
        if t < refine && max > 0.0 {
            let mut x = k.scale(C64::new(1.0 / max, 0.0));
            for _ in 0..PROJECTION_ROUNDS {
                let w = nearest_unitary_symmetric(&x, &tol)?;
                x = project(d, &coords, &w)?;
                let dist = (&x - &w).frobenius_norm() / scale;
                best_dist = best_dist.min(dist);
                if dist < 1e-12 {
                    break;
                }
            }
        }
    }
    Ok(UnitarySearch {
        d,
        trials,
        refined: refine.min(trials),
        best_random_gap: best_gap,
        best_refined_distance: best_dist,
        found: best_gap < 1e-8 || best_dist < 1e-8,
    })
}

/// Computational checks of the small-degree classification.
#[derive(Debug, Clone, Serialize)]
pub struct LowDegreeFacts {
    /// d = 1: real kernel dimension (must be 0) and the largest
    /// `|Σ x_i²|` of the isotropic line `(u, v, iu, iv)/√2` over samples.
    pub d1_kernel_dimension: usize,
    pub d1_isotropic_residual: f64,
    /// d = 2: real kernel dimension (must be 2) and distance from the kernel
    /// to the line spanned by `antidiag(1, -1, 1)`.
    pub d2_kernel_dimension: usize,
    pub d2_antidiag_deviation: f64,
    /// d = 4: `Σ (-1)^i C(4,i)`, membership of `antidiag(1, -1, 1, -1, 1)` and
    /// the spread of its singular values around 1.
    pub d4_alternating_sum: i64,
    pub d4_antidiag_member: bool,
    pub d4_antidiag_sigma_dev: f64,
    /// d = 4, λ < 1: value of `s_03 + √6 s_12` at `s_03 = -s_12 = 1`.
    pub d4_obstruction_value: f64,
    pub d5_search: UnitarySearch,
    pub d4_control_search: UnitarySearch,
}

/// Runs the checks with the given search budget.
pub fn low_degree_facts(trials: usize, refine: usize) -> Result<LowDegreeFacts> {
    let tol = Tolerances::default();

    let d1_kernel_dimension = kernel_dimension(1, 0)?;
    let mut d1_res: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..PROJECTION_ROUNDS {
        let u = crate::linalg::random::complex_gaussian(&mut rng);
        let v = crate::linalg::random::complex_gaussian(&mut rng);
        let i = C64::new(0.0, 1.0);
        let x = [u, v, i * u, i * v].map(|c| c * std::f64::consts::FRAC_1_SQRT_2);
        let q: C64 = x.iter().map(|c| c * c).sum();
        d1_res = d1_res.max(q.norm() / (u.norm_sqr() + v.norm_sqr()));
    }

    let d2_sys = membership_system(2, 0)?;
    let d2_kernel_dimension = d2_sys.num_cols() - d2_sys.rank()?;
    let line = ComplexMatrix::antidiag_real(&[1.0, -1.0, 1.0]).scale(C64::new(1.0 / 3f64.sqrt(), 0.0));
    let mut d2_dev: f64 = 0.0;
    for b in d2_sys.kernel_basis()? {
        // Each basis element must be a complex multiple of the line.
        let m = b.matrix();
        let c: C64 = m.as_slice().iter().zip(line.as_slice()).map(|(a, l)| l.conj() * a).sum();
        d2_dev = d2_dev.max((m - &line.scale(c)).frobenius_norm());
    }

    let d4_alternating_sum: i64 = (0..=4).map(|i| if i % 2 == 0 { 1 } else { -1 } * binomial(4, i) as i64).sum();
    let alt = SymmetricQuadric::new(4, ComplexMatrix::antidiag_real(&[1.0, -1.0, 1.0, -1.0, 1.0]))?;
    let report = is_member_s(&alt, 4, 0, &tol)?;
    let d4_sigma_dev = report.spectrum.iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);

    let mut pattern = ComplexMatrix::zeros(5, 5);
    for &(i, j, v) in &[(0usize, 3usize, 1.0), (1, 2, -1.0)] {
        pattern[(i, j)] = C64::new(v, 0.0);
        pattern[(j, i)] = C64::new(v, 0.0);
    }
    let d4_obstruction_value = (pattern[(0, 3)] + pattern[(1, 2)] * 6f64.sqrt()).norm();
    debug_assert!(pattern[(0, 0)] == ZERO);

    Ok(LowDegreeFacts {
        d1_kernel_dimension,
        d1_isotropic_residual: d1_res,
        d2_kernel_dimension,
        d2_antidiag_deviation: d2_dev,
        d4_alternating_sum,
        d4_antidiag_member: report.member,
        d4_antidiag_sigma_dev: d4_sigma_dev,
        d4_obstruction_value,
        d5_search: search_unitary_kernel(5, trials, refine, SEARCH_SEED)?,
        d4_control_search: search_unitary_kernel(4, refine.max(1), refine, SEARCH_SEED ^ 4)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(y: f64, z: f64) -> ModuliPoint3 {
        ModuliPoint3::new(y, z).unwrap()
    }

    #[test]
    fn worked_example_values() {
        let s = deg3_singular_values(pt(1.0 / 3.0, 0.5)).unwrap();
        let r = 19f64.sqrt() / 12.0;
        let want = [r - 1.0 / 3.0, 0.5, 2.0 / 3.0, r + 1.0 / 3.0];
        for (a, b) in s.iter().zip(&want) {
            assert!((a - b).abs() < 1e-14);
        }
        let m = deg3_matrix(pt(1.0 / 3.0, 0.5));
        assert!((m.entry(0, 3).re - 0.5).abs() < 1e-15);
        assert!((m.entry(1, 2).re + 1.0 / 6.0).abs() < 1e-15);
        assert!((m.entry(1, 3).re + 3f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn h35_point() {
        let s = deg3_singular_values(pt(2.0 / 3.0, 0.0)).unwrap();
        let want = [1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0];
        for (a, b) in s.iter().zip(&want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(deg3_region(pt(2.0 / 3.0, 0.0)).unwrap(), Region3::H35Point);
        assert_eq!(eta_quartic(2.0 / 3.0, 0.0).abs() < 1e-14, true);
        let back = deg3_recover(&[1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0]).unwrap();
        assert!((back.y - 2.0 / 3.0).abs() < 1e-12 && back.z.abs() < 1e-12);
    }

    #[test]
    fn regions() {
        assert_eq!(deg3_region(pt(0.0, 1.0)).unwrap(), Region3::BoundaryEtaH36);
        assert_eq!(deg3_region(pt(0.1, 0.1)).unwrap(), Region3::InteriorH37);
        assert_eq!(deg3_region(pt(1.0, 1.0)).unwrap(), Region3::Outside);
        assert_eq!(eta_quartic(0.0, 1.0), 0.0);
    }

    #[test]
    fn zero_point() {
        assert_eq!(deg3_matrix(pt(0.0, 0.0)).matrix().max_abs(), 0.0);
        assert_eq!(deg3_recover(&[0.0; 4]).unwrap(), pt(0.0, 0.0));
        assert!(deg3_recover(&[0.1, 0.5, 0.6, 0.9]).is_err());
    }

    #[test]
    fn eta_curve_is_monotone_and_on_the_quartic() {
        let pts = eta_curve(50).unwrap();
        assert!((pts[0].y - 2.0 / 3.0).abs() < 1e-12);
        assert!(pts.last().unwrap().y < 1e-6);
        assert!(pts.windows(2).all(|w| w[1].y <= w[0].y));
        assert!(pts.iter().all(|p| p.quartic.abs() < QUARTIC_TOL));
    }

    #[test]
    fn d4_control_converges_where_d5_stalls() {
        let c = search_unitary_kernel(4, 20, 20, 3).unwrap();
        let s = search_unitary_kernel(5, 20, 20, 3).unwrap();
        assert!(c.best_refined_distance < CONTROL_DISTANCE, "{c:?}");
        assert!(!s.found && s.best_refined_distance > 100.0 * c.best_refined_distance, "{s:?}");
    }
}
