//! Differential invariants of constructed spheres.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsphere::classify::{deg3_matrix, ModuliPoint3};
use qsphere::construct::build_sphere;
use qsphere::geometry::{
    curvature_fd, homogeneity_test, metric_factor, tangent_data, tangent_projections_fd, tau_invariants,
    tau_x_closed_form, HomogeneityCase,
};
use qsphere::linalg::random::point_in_disk;
use qsphere::linalg::{svd, Tolerances, C64};
use qsphere::quadrics::{random_kernel_element, SymmetricQuadric};
use qsphere::veronese::{curvature_and_angle, veronese_map};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn member(d: usize, p: usize, seed: u64) -> Option<SymmetricQuadric> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = random_kernel_element(d, p, &mut rng).unwrap();
    let top = svd(k.matrix()).unwrap().spectrum.max();
    (top > 0.0).then(|| k.scale(C64::new(0.9 / top, 0.0)))
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

#[test]
fn tangent_vectors_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (d, p) in [(3, 0), (4, 1), (5, 2), (6, 3)] {
        let s = member(d, p, 7).unwrap_or(SymmetricQuadric::zero(d).unwrap());
        let f = build_sphere(&s, 2 * d + 1, p, &tol()).unwrap();
        for _ in 0..5 {
            let z = point_in_disk(1.5, &mut rng);
            let t = tangent_data(&f, z).unwrap();
            let (dz, dzb) = tangent_projections_fd(&f, z, 1e-5).unwrap();
            // (∂f)^⊥ = λX and (∂̄f)^⊥ = λY.
            let ex: f64 = dz.iter().zip(&t.x).map(|(a, b)| (a - b * t.lambda).norm()).fold(0.0, f64::max);
            let ey: f64 = dzb.iter().zip(&t.y).map(|(a, b)| (a - b * t.lambda).norm()).fold(0.0, f64::max);
            assert!(ex < 1e-8 && ey < 1e-8, "d = {d}, p = {p}: {ex:e} {ey:e}");
            // The metric λ² agrees with the sum of the squared projections, relative to λ².
            let g = norm2(&dz) + norm2(&dzb);
            assert!((g - t.lambda * t.lambda).abs() < 1e-8 * t.lambda * t.lambda, "{g} vs {}", t.lambda * t.lambda);
        }
    }
}

#[test]
fn tau_x_closed_form_matches_the_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for d in 2..=8 {
        for p in 0..=d / 2 {
            let Some(s) = member(d, p, (d * 31 + p) as u64) else { continue };
            let f = build_sphere(&s, 2 * d + 1, p, &tol()).unwrap();
            for _ in 0..10 {
                let z = point_in_disk(2.0, &mut rng);
                let (tx, _, _) = tau_invariants(&f, z).unwrap();
                let closed = tau_x_closed_form(s.matrix(), d, p, z).unwrap();
                // Oracle: |ᵗZ_{p+1} S Z_{p+1}| normalized by λ²|Z_p|².
                let zp1 = veronese_map(d, p + 1, z).unwrap();
                let lam = metric_factor(d, p, z);
                let raw = s.matrix().bilinear(&zp1, &zp1).norm() / (lam * lam * norm2(&veronese_map(d, p, z).unwrap()));
                assert!((tx - closed).abs() < 1e-8, "d = {d}, p = {p}: {tx} vs {closed}");
                assert!((tx - raw).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn curvature_by_finite_differences() {
    for (d, p) in [(2, 1), (3, 1), (4, 2), (5, 0)] {
        let f = build_sphere(&SymmetricQuadric::zero(d).unwrap(), 2 * d + 1, p, &tol()).unwrap();
        let (k, _) = curvature_and_angle(d, p).unwrap();
        for z in [C64::new(0.0, 0.0), C64::new(0.3, -0.4), C64::new(1.1, 0.2)] {
            let kfd = curvature_fd(&f, z).unwrap();
            assert!((kfd - k).abs() < 1e-6, "d = {d}, p = {p}: {kfd} vs {k}");
        }
    }
}

#[test]
fn homogeneity_cases() {
    // S = 0 is homogeneous for every (d, p).
    for d in 1..=6 {
        for p in 0..=d / 2 {
            let f = build_sphere(&SymmetricQuadric::zero(d).unwrap(), 2 * d + 1, p, &tol()).unwrap();
            let v = homogeneity_test(&f, &tol()).unwrap();
            assert!(v.constant && v.tau_x_max <= 1e-12, "d = {d}, p = {p}: {v:?}");
        }
    }
    // Degree-3 normal forms away from the origin are not.
    for (y, z) in [(1.0 / 3.0, 0.5), (0.2, 0.0), (0.0, 0.7), (2.0 / 3.0, 0.0)] {
        let s = deg3_matrix(ModuliPoint3::new(y, z).unwrap());
        let n = if (y, z) == (2.0 / 3.0, 0.0) { 5 } else { 7 };
        let f = build_sphere(&s, n, 0, &tol()).unwrap();
        let v = homogeneity_test(&f, &tol()).unwrap();
        assert_eq!(v.case, HomogeneityCase::Criterion);
        assert!(!v.constant && v.tau_x_spread >= 1e-3, "({y}, {z}): {v:?}");
        assert_eq!(v.algebraic, Some(false));
    }
}
