//! Invariants of a constructed sphere `E Z_{d,p}`: the metric factor, the
//! tangent projections `X` and `Y`, the τ invariants, `‖B‖²` and the
//! constancy test that decides homogeneity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::SphereFrame;
use crate::error::{Error, Result};
use crate::linalg::{dot, dot_conj, norm, random::point_in_disk, ComplexMatrix, Tolerances, C64, ZERO};
use crate::quadrics::{is_member_s, SymmetricQuadric};
use crate::veronese::{curvature_and_angle, factorial, holomorphic_derivative, norm_sq, veronese_map};

/// Seed of the sample used by [`homogeneity_test`].
pub const GEOMETRY_SEED: u64 = 0x7A05_9E0;
/// Number of sample points used by [`homogeneity_test`].
pub const HOMOGENEITY_SAMPLES: usize = 100;
/// Radius of the disk the homogeneity sample is drawn from.
const SAMPLE_RADIUS: f64 = 2.0;
/// Relative spread below which a sampled function counts as constant.
pub const CONSTANT_SPREAD: f64 = 1e-8;
/// Absolute spread above which a sampled function counts as non-constant.
pub const NONCONSTANT_SPREAD: f64 = 1e-3;

/// `λ`, `X` and `Y` at one point.
#[derive(Debug, Clone)]
pub struct TangentData {
    pub lambda: f64,
    pub x: Vec<C64>,
    pub y: Vec<C64>,
}

/// `λ = √(d + 2p(d-p)) / (1 + |z|²)`.
pub fn metric_factor(d: usize, p: usize, z: C64) -> f64 {
    ((d + 2 * p * (d - p)) as f64).sqrt() / (1.0 + z.norm_sqr())
}

/// `X = E Z_{d,p+1} / (λ |Z_{d,p}|)` and
/// `Y = -|Z_{d,p}| E Z_{d,p-1} / (λ |Z_{d,p-1}|²)`; `X = 0` for `p = d` and
/// `Y = 0` for `p = 0`.
pub fn tangent_data(f: &SphereFrame, z: C64) -> Result<TangentData> {
    let (d, p) = (f.d, f.p);
    let lambda = metric_factor(d, p, z);
    let zp = norm_sq(d, p, z).sqrt();
    let rows = f.e.rows();
    let x = if p < d {
        let v = f.e.mul_vec(&veronese_map(d, p + 1, z)?);
        v.into_iter().map(|c| c / (lambda * zp)).collect()
    } else {
        vec![ZERO; rows]
    };
    let y = if p > 0 {
        let v = f.e.mul_vec(&veronese_map(d, p - 1, z)?);
        let scale = -zp / (lambda * norm_sq(d, p - 1, z));
        v.into_iter().map(|c| c * scale).collect()
    } else {
        vec![ZERO; rows]
    };
    Ok(TangentData { lambda, x, y })
}

/// `(τ_X, τ_Y, τ_XY) = (|ᵗX X|, |ᵗY Y|, |ᵗX Y|)`.
pub fn tau_invariants(f: &SphereFrame, z: C64) -> Result<(f64, f64, f64)> {
    let t = tangent_data(f, z)?;
    Ok((
        dot(&t.x, &t.x).norm(),
        dot(&t.y, &t.y).norm(),
        dot(&t.x, &t.y).norm(),
    ))
}

/// `‖B‖²` from the general formula
/// `2 + 6cos²θ - 2K - 4τ_X² - 4τ_Y² + 8τ_XY²` (with `cos θ = |X|² - |Y|²`
/// at the point) and from the specialized form `-2K + 2 + 6cos²θ - 4τ_X²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondFundamental {
    pub general: f64,
    pub specialized: f64,
}

pub fn second_fundamental_norm(f: &SphereFrame, z: C64) -> Result<SecondFundamental> {
    let t = tangent_data(f, z)?;
    let (k, cos) = curvature_and_angle(f.d, f.p)?;
    let tx = dot(&t.x, &t.x).norm();
    let ty = dot(&t.y, &t.y).norm();
    let txy = dot(&t.x, &t.y).norm();
    let cos_here = norm(&t.x).powi(2) - norm(&t.y).powi(2);
    Ok(SecondFundamental {
        general: 2.0 + 6.0 * cos_here * cos_here - 2.0 * k - 4.0 * tx * tx - 4.0 * ty * ty + 8.0 * txy * txy,
        specialized: -2.0 * k + 2.0 + 6.0 * cos * cos - 4.0 * tx * tx,
    })
}

/// `g(z) = ᵗZ_{d,0} S ∂^{2p+2} Z_{d,0}`, using exact differentiation of the
/// monomials. Zero when `2p + 2 > d`.
pub fn tau_polynomial(s: &ComplexMatrix, d: usize, p: usize, z: C64) -> Result<C64> {
    let k = 2 * p + 2;
    if k > d {
        return Ok(ZERO);
    }
    let z0 = holomorphic_derivative(d, 0, z)?;
    let dk = holomorphic_derivative(d, k, z)?;
    Ok(s.bilinear(&z0, &dk))
}

/// `τ_X` from `S = ᵗEE` alone:
/// `(d-p)! / ((d + 2p(d-p)) d! p!) · |g(z)| / (1+|z|²)^{d-2p-2}`.
pub fn tau_x_closed_form(s: &ComplexMatrix, d: usize, p: usize, z: C64) -> Result<f64> {
    let g = tau_polynomial(s, d, p, z)?;
    let c = factorial(d - p) / ((d + 2 * p * (d - p)) as f64 * factorial(d) * factorial(p));
    Ok(c * g.norm() / (1.0 + z.norm_sqr()).powi(d as i32 - 2 * p as i32 - 2))
}

/// `∂f/∂z` and `∂f/∂z̄` of `f(z)`, by central differences of step `h` with
/// fourth-order accuracy when `high_order` is set.
fn wirtinger<F>(f: F, z: C64, h: f64, high_order: bool) -> Result<(Vec<C64>, Vec<C64>)>
where
    F: Fn(C64) -> Result<Vec<C64>>,
{
    let partial = |dir: C64| -> Result<Vec<C64>> {
        let a = f(z + dir * h)?;
        let b = f(z - dir * h)?;
        if high_order {
            let a2 = f(z + dir * (2.0 * h))?;
            let b2 = f(z - dir * (2.0 * h))?;
            Ok((0..a.len())
                .map(|i| (-a2[i] + a[i] * 8.0 - b[i] * 8.0 + b2[i]) / (12.0 * h))
                .collect())
        } else {
            Ok((0..a.len()).map(|i| (a[i] - b[i]) / (2.0 * h)).collect())
        }
    };
    let fx = partial(C64::new(1.0, 0.0))?;
    let fy = partial(C64::new(0.0, 1.0))?;
    let i = C64::new(0.0, 1.0);
    let dz = fx.iter().zip(&fy).map(|(a, b)| (a - i * b) * 0.5).collect();
    let dzb = fx.iter().zip(&fy).map(|(a, b)| (a + i * b) * 0.5).collect();
    Ok((dz, dzb))
}

fn project_out(v: &[C64], unit: &[C64]) -> Vec<C64> {
    let c = dot_conj(unit, v);
    v.iter().zip(unit).map(|(a, u)| a - u * c).collect()
}

/// `(∂f)^⊥` and `(∂̄f)^⊥` for the unit lift `f = E Z_{d,p}/|Z_{d,p}|`, by
/// finite differences.
pub fn tangent_projections_fd(frame: &SphereFrame, z: C64, h: f64) -> Result<(Vec<C64>, Vec<C64>)> {
    let unit = frame.unit_point(z)?;
    let (dz, dzb) = wirtinger(|w| frame.unit_point(w), z, h, false)?;
    Ok((project_out(&dz, &unit), project_out(&dzb, &unit)))
}

fn metric_fd(frame: &SphereFrame, z: C64, h: f64) -> Result<f64> {
    let unit = frame.unit_point(z)?;
    let (dz, dzb) = wirtinger(|w| frame.unit_point(w), z, h, true)?;
    Ok(norm(&project_out(&dz, &unit)).powi(2) + norm(&project_out(&dzb, &unit)).powi(2))
}

/// Gaussian curvature `-(2/λ²) ∂²(log λ²)/∂z∂z̄` of the induced metric, with
/// `λ²` itself obtained by differentiating the unit lift numerically.
///
/// Both derivatives use fourth-order stencils (steps `1e-3` for the metric and
/// `1e-2` for its Laplacian), which keeps the nested error near `1e-8`.
pub fn curvature_fd(frame: &SphereFrame, z: C64) -> Result<f64> {
    let h_inner = 1e-3;
    let h = 1e-2;
    let log_g = |w: C64| -> Result<f64> { Ok(metric_fd(frame, w, h_inner)?.ln()) };
    let c = log_g(z)?;
    let mut lap = 0.0;
    for dir in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
        let p1 = log_g(z + dir * h)?;
        let m1 = log_g(z - dir * h)?;
        let p2 = log_g(z + dir * (2.0 * h))?;
        let m2 = log_g(z - dir * (2.0 * h))?;
        lap += (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
    }
    Ok(-lap / (2.0 * metric_fd(frame, z, h_inner)?))
}

/// Which part of the homogeneity theorem applies to `(d, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomogeneityCase {
    /// `d <= 2`: `‖B‖²` is constant.
    LowDegree,
    /// `p = ⌊d/2⌋`: `S = 0` and `‖B‖²` is constant.
    TopIndex,
    /// `d` even, `p = d/2 - 1`: `S` lives on the main anti-diagonal and
    /// `‖B‖²` is constant.
    EvenSubTop,
    /// Otherwise: `‖B‖²` is constant iff `E Z_{d,p+1}` lies in the quadric.
    Criterion,
}

impl HomogeneityCase {
    pub fn of(d: usize, p: usize) -> HomogeneityCase {
        if d <= 2 {
            HomogeneityCase::LowDegree
        } else if p >= d / 2 {
            HomogeneityCase::TopIndex
        } else if d % 2 == 0 && p + 1 == d / 2 {
            HomogeneityCase::EvenSubTop
        } else {
            HomogeneityCase::Criterion
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityVerdict {
    pub case: HomogeneityCase,
    /// `"algebraic+sampled"` when the membership criterion applies,
    /// otherwise `"sampled"`.
    pub method: &'static str,
    /// Membership of `ᵗEE` in `S_{d,n,p+1}`; only for [`HomogeneityCase::Criterion`].
    pub algebraic: Option<bool>,
    pub constant: bool,
    pub tau_x_spread: f64,
    pub tau_x_max: f64,
    pub b_norm_spread: f64,
    pub samples: usize,
}

fn sample_points(count: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(GEOMETRY_SEED);
    (0..count).map(|_| point_in_disk(SAMPLE_RADIUS, &mut rng)).collect()
}

fn spread(values: &[f64]) -> (f64, f64) {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min, max)
}

/// `Some(true)` for constant, `Some(false)` for non-constant, `None` when
/// the spread falls between the two thresholds.
fn classify_spread(spread: f64, max: f64) -> Option<bool> {
    if spread <= CONSTANT_SPREAD * (1.0 + max.abs()) {
        Some(true)
    } else if spread >= NONCONSTANT_SPREAD {
        Some(false)
    } else {
        None
    }
}

/// Decides whether `‖B‖²` (equivalently `τ_X`) is constant.
///
/// The sampled verdict uses [`HOMOGENEITY_SAMPLES`] points, retrying at ten
/// times the density when the spread is inconclusive. In the criterion case
/// it must agree with membership of `ᵗEE` in `S_{d,n,p+1}`.
pub fn homogeneity_test(f: &SphereFrame, tol: &Tolerances) -> Result<HomogeneityVerdict> {
    let case = HomogeneityCase::of(f.d, f.p);
    let mut count = HOMOGENEITY_SAMPLES;
    let (constant, tx_spread, tx_max, b_spread) = loop {
        let mut tx = Vec::with_capacity(count);
        let mut b = Vec::with_capacity(count);
        for z in sample_points(count) {
            tx.push(tau_invariants(f, z)?.0);
            b.push(second_fundamental_norm(f, z)?.specialized);
        }
        let (s, m) = spread(&tx);
        let (bs, _) = spread(&b);
        match classify_spread(s, m) {
            Some(c) => break (c, s, m, bs),
            None if count == HOMOGENEITY_SAMPLES => count *= 10,
            None => {
                return Err(Error::numeric(
                    format!("τ_X spread {s:.3e} is neither constant nor clearly varying"),
                    s,
                ))
            }
        }
    };
    let algebraic = if case == HomogeneityCase::Criterion {
        let s = SymmetricQuadric::new(f.d, f.quadric_matrix())?;
        Some(is_member_s(&s, f.n, f.p + 1, tol)?.member)
    } else {
        None
    };
    let expected = algebraic.unwrap_or(true);
    if expected != constant {
        return Err(Error::numeric(
            format!("{case:?}: theory says constant = {expected}, sampling says {constant}"),
            tx_spread,
        ));
    }
    Ok(HomogeneityVerdict {
        case,
        method: if algebraic.is_some() { "algebraic+sampled" } else { "sampled" },
        algebraic,
        constant,
        tau_x_spread: tx_spread,
        tau_x_max: tx_max,
        b_norm_spread: b_spread,
        samples: count,
    })
}

/// Invariants at one sample point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GeometrySample {
    pub z: (f64, f64),
    pub lambda: f64,
    pub x_sq: f64,
    pub y_sq: f64,
    pub tau_x: f64,
    pub tau_y: f64,
    pub tau_xy: f64,
    pub b_norm_sq: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometryReport {
    pub d: usize,
    pub n: usize,
    pub p: usize,
    pub curvature: f64,
    pub cos_kahler: f64,
    pub samples: Vec<GeometrySample>,
    pub tau_x_min: f64,
    pub tau_x_max: f64,
    pub tau_x_spread: f64,
    pub b_norm_min: f64,
    pub b_norm_max: f64,
    pub b_norm_spread: f64,
    pub homogeneity: HomogeneityVerdict,
}

/// Points of an `N x N` grid over `[-2, 2]²`; the single point `0` for `N = 1`.
pub fn grid_points(n: usize) -> Vec<C64> {
    if n <= 1 {
        return vec![ZERO; n];
    }
    let step = 2.0 * SAMPLE_RADIUS / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(C64::new(-SAMPLE_RADIUS + step * j as f64, -SAMPLE_RADIUS + step * i as f64));
        }
    }
    out
}

/// Evaluates every invariant on `points` and runs [`homogeneity_test`].
pub fn geometry_report(f: &SphereFrame, points: &[C64], tol: &Tolerances) -> Result<GeometryReport> {
    let (curvature, cos_kahler) = curvature_and_angle(f.d, f.p)?;
    let mut samples = Vec::with_capacity(points.len());
    for &z in points {
        let t = tangent_data(f, z)?;
        let (tx, ty, txy) = tau_invariants(f, z)?;
        samples.push(GeometrySample {
            z: (z.re, z.im),
            lambda: t.lambda,
            x_sq: norm(&t.x).powi(2),
            y_sq: norm(&t.y).powi(2),
            tau_x: tx,
            tau_y: ty,
            tau_xy: txy,
            b_norm_sq: second_fundamental_norm(f, z)?.general,
        });
    }
    let range = |v: Vec<f64>| -> (f64, f64) {
        if v.is_empty() {
            (0.0, 0.0)
        } else {
            (v.iter().copied().fold(f64::INFINITY, f64::min), v.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        }
    };
    let (tmin, tmax) = range(samples.iter().map(|s| s.tau_x).collect());
    let (bmin, bmax) = range(samples.iter().map(|s| s.b_norm_sq).collect());
    Ok(GeometryReport {
        d: f.d,
        n: f.n,
        p: f.p,
        curvature,
        cos_kahler,
        samples,
        tau_x_min: tmin,
        tau_x_max: tmax,
        tau_x_spread: tmax - tmin,
        b_norm_min: bmin,
        b_norm_max: bmax,
        b_norm_spread: bmax - bmin,
        homogeneity: homogeneity_test(f, tol)?,
    })
}

impl GeometryReport {
    /// One CSV row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("z_re,z_im,lambda,x_sq,y_sq,tau_x,tau_y,tau_xy,b_norm_sq\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                s.z.0, s.z.1, s.lambda, s.x_sq, s.y_sq, s.tau_x, s.tau_y, s.tau_xy, s.b_norm_sq
            ));
        }
        out
    }
}
