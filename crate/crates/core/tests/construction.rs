//! Frames built from members of `S_{d,n,p}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsphere::classify::{deg3_matrix, ModuliPoint3};
use qsphere::construct::{build_sphere, v_sigma, verify_sphere, SphereFrame};
use qsphere::geometry::tau_invariants;
use qsphere::linalg::random::point_in_disk;
use qsphere::linalg::{svd, takagi, ComplexMatrix, Tolerances, C64};
use qsphere::quadrics::{random_kernel_element, SymmetricQuadric};
use qsphere::veronese::{su2_rep_matrix, GroupElement};

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Real Gram data of the columns of `E`: the matrix of real inner products
/// among `Re E_j` and `Im E_j`. Invariant under real orthogonal changes of
/// the ambient coordinates.
fn real_gram(e: &ComplexMatrix) -> Vec<f64> {
    let mut vecs: Vec<Vec<f64>> = Vec::new();
    for j in 0..e.cols() {
        vecs.push((0..e.rows()).map(|i| e[(i, j)].re).collect());
        vecs.push((0..e.rows()).map(|i| e[(i, j)].im).collect());
    }
    let mut g = Vec::new();
    for a in &vecs {
        for b in &vecs {
            g.push(a.iter().zip(b).map(|(x, y)| x * y).sum());
        }
    }
    g
}

fn scaled_member(d: usize, seed: u64, top: f64) -> SymmetricQuadric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = random_kernel_element(d, 0, &mut rng).unwrap();
    let m = svd(k.matrix()).unwrap().spectrum.max();
    k.scale(C64::new(top / m, 0.0))
}

#[test]
fn frames_from_different_factorizations_agree() {
    for (d, seed) in [(3, 1), (4, 2), (5, 3), (6, 4)] {
        let s = scaled_member(d, seed, 0.9);
        let n = 2 * d + 1;
        let t = takagi(s.matrix()).unwrap();
        // Ũ = D U with D = diag(±1) commutes with Σ, so ᵗŨ Σ Ũ = S as well.
        let signs: Vec<C64> = (0..=d).map(|i| C64::new(if i % 3 == 1 { -1.0 } else { 1.0 }, 0.0)).collect();
        let u2 = &ComplexMatrix::diag(&signs) * &t.u;
        let back = &(&u2.transpose() * &ComplexMatrix::diag_real(&t.spectrum.values)) * &u2;
        assert!((&back - s.matrix()).frobenius_norm() < 1e-10);
        let v = v_sigma(&t.spectrum, d, n, &tol()).unwrap().matrix;
        let e1 = &v * &t.u;
        let e2 = &v * &u2;
        let (g1, g2) = (real_gram(&e1), real_gram(&e2));
        let err = g1.iter().zip(&g2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-9, "d = {d}: {err:e}");
        // Both frames lie in the quadric.
        for e in [e1, e2] {
            let f = SphereFrame::new(d, n, 0, e, 1e-10).unwrap();
            assert!(verify_sphere(&f, &tol()).unwrap().passed);
        }
    }
}

#[test]
fn every_frame_reproduces_its_matrix() {
    for d in 2..=8 {
        for p in 0..=d / 2 {
            let mut rng = ChaCha8Rng::seed_from_u64((10 * d + p) as u64);
            let k = random_kernel_element(d, p, &mut rng).unwrap();
            let top = svd(k.matrix()).unwrap().spectrum.max();
            if top == 0.0 {
                continue;
            }
            let s = k.scale(C64::new(0.8 / top, 0.0));
            let f = build_sphere(&s, 2 * d + 1, p, &tol()).unwrap();
            assert!((&f.quadric_matrix() - s.matrix()).frobenius_norm() < 1e-10);
            let r = verify_sphere(&f, &tol()).unwrap();
            assert!(r.passed && r.full, "d = {d}, p = {p}: {r:?}");
        }
    }
}

#[test]
fn congruent_matrices_give_congruent_spheres() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for d in [3, 4, 5] {
        let s = scaled_member(d, d as u64, 0.95);
        let g = GroupElement::random(&mut rng);
        let rho = su2_rep_matrix(d, &g).unwrap();
        let moved = SymmetricQuadric::new(d, &(&rho.transpose() * s.matrix()) * &rho).unwrap();
        let n = 2 * d + 1;
        let f1 = build_sphere(&s, n, 0, &tol()).unwrap();
        let f2 = build_sphere(&moved, n, 0, &tol()).unwrap();
        let (r1, r2) = (verify_sphere(&f1, &tol()).unwrap(), verify_sphere(&f2, &tol()).unwrap());
        let spread = r1.spectrum.iter().zip(&r2.spectrum).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(spread < 1e-10);
        // ρ(g) = ᵗρ(g') with g' = (a, -b̄) acts on Z_d(1, z) by the
        // substitution of g', so the second sphere at z is the first at z'.
        let gp = GroupElement::new(g.a, -g.b.conj()).unwrap();
        for _ in 0..20 {
            let z = point_in_disk(1.5, &mut rng);
            let (u, v) = gp.substitute(C64::new(1.0, 0.0), z);
            let z1 = v / u;
            let a = tau_invariants(&f2, z).unwrap().0;
            let b = tau_invariants(&f1, z1).unwrap().0;
            assert!((a - b).abs() < 1e-9, "d = {d}: {a} vs {b}");
        }
    }
}

#[test]
fn worked_example_eigenvectors() {
    // The printed eigenvectors of S(1/2, 1/3) give a Takagi unitary
    // directly: rows i·v1, v2, i·v3, v4 (normalized) for the eigenvalues
    // λ1 < 0, λ2 > 0, λ3 < 0, λ4 > 0.
    let s = deg3_matrix(ModuliPoint3::new(1.0 / 3.0, 0.5).unwrap());
    let eig = qsphere::linalg::hermitian_eigen(s.matrix()).unwrap();
    let mut u = ComplexMatrix::zeros(4, 4);
    let mut sigma = Vec::new();
    for k in 0..4 {
        let l = eig.values[k];
        let phase = if l < 0.0 { C64::new(0.0, 1.0) } else { C64::new(1.0, 0.0) };
        for j in 0..4 {
            u[(k, j)] = phase * eig.vectors[(j, k)];
        }
        sigma.push(C64::new(l.abs(), 0.0));
    }
    let back = &(&u.transpose() * &ComplexMatrix::diag(&sigma)) * &u;
    assert!((&back - s.matrix()).frobenius_norm() < 1e-12);
    assert!(u.unitarity_defect() < 1e-12);
}

#[test]
fn isotropic_line_from_the_zero_matrix() {
    let f = build_sphere(&SymmetricQuadric::zero(1).unwrap(), 3, 0, &tol()).unwrap();
    assert_eq!((f.e.rows(), f.e.cols()), (4, 2));
    assert!(verify_sphere(&f, &tol()).unwrap().passed);
}
