//! Explicit members of `S_{d,n} \ S_{d,n-1}` built from anti-diagonal
//! solutions of the degree-`m` membership equation.
//!
//! For `p = 0` the membership equations decouple along anti-diagonals: the
//! entries `s_{j,m-j}` only meet the single equation
//! `Σ_j s_{j,m-j} √(C(d,j) C(d,m-j)) = 0`. Folding the symmetric pairs turns
//! it into an alternating chain `Σ ± x_j ε_j = 0` with increasing weights,
//! which [`solve_chain`] solves for one unknown while keeping it in `[0, 1)`
//! or `(-1, 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{svd_with, ComplexMatrix, Tolerances, C64, ZERO};
use crate::quadrics::{membership_system, num_unknowns, real_kernel, unknown_index, SymmetricQuadric};
use crate::veronese::{binomial_f64, check_degree};

/// Gap required between 1 and every singular value that is not 1.
pub const SPECTRAL_MARGIN: f64 = 1e-4;

/// Residual bound for the anti-diagonal equation, relative to `Σ |terms|`.
const ANTIDIAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainVariant {
    /// Knowns `x_0 <= ... <= x_{k-1}`; solves `Σ_{j<=k} (-1)^j x_j ε_j = 0`
    /// for `x_k`.
    SolveLast,
    /// Knowns `x_0 <= ... <= x_{k-2}` followed by `x_k`; solves
    /// `2 Σ_{j<k} (-1)^j x_j ε_j - (-1)^k x_k ε_k = 0` for `x_{k-1}`.
    SolvePenultimate,
}

/// An alternating chain with weights `ε_0 < ... < ε_k`.
///
/// `knowns` always has length `k`; see [`ChainVariant`] for its layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainProblem {
    pub epsilons: Vec<f64>,
    pub knowns: Vec<f64>,
    pub variant: ChainVariant,
}

impl ChainProblem {
    fn validate(&self) -> Result<()> {
        let e = &self.epsilons;
        if e.len() < 2 {
            return Err(Error::invalid("a chain needs at least two weights"));
        }
        if e.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::invalid("chain weights must be finite and positive"));
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("chain weights must be strictly increasing"));
        }
        let k = e.len() - 1;
        if self.knowns.len() != k {
            return Err(Error::invalid(format!("expected {k} knowns, got {}", self.knowns.len())));
        }
        if self.knowns.iter().any(|x| !x.is_finite() || !(0.0..=1.0).contains(x)) {
            return Err(Error::invalid("knowns must lie in [0, 1]"));
        }
        let monotone = match self.variant {
            ChainVariant::SolveLast => &self.knowns[..],
            ChainVariant::SolvePenultimate => &self.knowns[..k - 1],
        };
        if monotone.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid("knowns must be nondecreasing"));
        }
        if self.variant == ChainVariant::SolvePenultimate && e[k] >= 2.0 * e[k - 1] {
            return Err(Error::invalid("solving for the penultimate unknown needs ε_k < 2 ε_(k-1)"));
        }
        Ok(())
    }

    /// All `k + 1` values with `x` inserted at the unknown slot.
    pub fn full_values(&self, x: f64) -> Vec<f64> {
        let mut v = self.knowns.clone();
        match self.variant {
            ChainVariant::SolveLast => v.push(x),
            ChainVariant::SolvePenultimate => v.insert(v.len() - 1, x),
        }
        v
    }

    /// Signed terms of the defining identity at `x`; they sum to zero at the
    /// solution.
    pub fn terms(&self, x: f64) -> Vec<f64> {
        let v = self.full_values(x);
        let k = v.len() - 1;
        let sign = |j: usize| if j % 2 == 0 { 1.0 } else { -1.0 };
        match self.variant {
            ChainVariant::SolveLast => (0..=k).map(|j| sign(j) * v[j] * self.epsilons[j]).collect(),
            ChainVariant::SolvePenultimate => (0..=k)
                .map(|j| {
                    if j < k {
                        2.0 * sign(j) * v[j] * self.epsilons[j]
                    } else {
                        -sign(k) * v[k] * self.epsilons[k]
                    }
                })
                .collect(),
        }
    }

    /// `|Σ terms| / Σ |terms|` (zero when every term vanishes).
    pub fn relative_residual(&self, x: f64) -> f64 {
        let t = self.terms(x);
        let scale: f64 = t.iter().map(|v| v.abs()).sum();
        if scale == 0.0 {
            0.0
        } else {
            t.iter().sum::<f64>().abs() / scale
        }
    }
}

fn sign(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The unknown of the chain, without checking the lemma's hypotheses.
fn chain_value(eps: &[f64], knowns: &[f64], variant: ChainVariant) -> f64 {
    let k = eps.len() - 1;
    match variant {
        ChainVariant::SolveLast => {
            let s: f64 = (0..k).map(|j| sign(j) * knowns[j] * eps[j]).sum();
            -sign(k) * s / eps[k]
        }
        ChainVariant::SolvePenultimate => {
            let xk = knowns[k - 1];
            let s: f64 = (0..k - 1).map(|j| sign(j) * knowns[j] * eps[j]).sum();
            (sign(k) * xk * eps[k] - 2.0 * s) / (2.0 * sign(k - 1) * eps[k - 1])
        }
    }
}

/// Solves the chain for its single unknown.
///
/// Solve-last returns `0 <= x_k < x_{k-1}` (equality only when every known
/// vanishes); solve-penultimate returns `-1 < x_{k-1} < 1`.
pub fn solve_chain(p: &ChainProblem) -> Result<f64> {
    p.validate()?;
    let x = chain_value(&p.epsilons, &p.knowns, p.variant);
    let k = p.epsilons.len() - 1;
    let ok = match p.variant {
        ChainVariant::SolveLast => {
            let prev = p.knowns[k - 1];
            x >= 0.0 && (x < prev || prev == 0.0 && x == 0.0)
        }
        ChainVariant::SolvePenultimate => x.abs() < 1.0,
    };
    if !ok {
        return Err(Error::numeric(format!("chain solution {x} violates its bound"), x.abs()));
    }
    Ok(x)
}

/// Weights `ε_j = √(C(d,j) C(d,m-j))` for `0 <= j <= ⌊m/2⌋`.
pub fn chain_weights(d: usize, m: usize) -> Vec<f64> {
    (0..=m / 2).map(|j| (binomial_f64(d, j) * binomial_f64(d, m - j)).sqrt()).collect()
}

/// A real solution `s_{j,m-j}`, `0 <= j <= m`, of the degree-`m`
/// anti-diagonal equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntidiagonalSolution {
    pub d: usize,
    pub m: usize,
    pub values: Vec<f64>,
    /// The solved value; it occupies the pair `(k, m-k)` for odd `m` and
    /// `(k-1, m-k+1)` for even `m`, `k = ⌊m/2⌋`.
    pub lambda: f64,
    pub residual: f64,
}

impl AntidiagonalSolution {
    /// `|Σ_j s_{j,m-j} √(C(d,j) C(d,m-j))|`.
    pub fn equation_residual(&self) -> f64 {
        antidiagonal_sum(self.d, self.m, &self.values).0
    }
}

/// `(|Σ terms|, Σ |terms|)` for the anti-diagonal equation.
fn antidiagonal_sum(d: usize, m: usize, values: &[f64]) -> (f64, f64) {
    let mut s = 0.0;
    let mut scale = 0.0;
    for (j, v) in values.iter().enumerate() {
        let t = v * (binomial_f64(d, j) * binomial_f64(d, m - j)).sqrt();
        s += t;
        scale += t.abs();
    }
    (s.abs(), scale)
}

/// Mirrors the folded values `x_0..x_k` onto `0..=m` with the chain's signs.
fn unfold(m: usize, x: &[f64], variant: ChainVariant) -> Vec<f64> {
    let k = m / 2;
    let mut folded: Vec<f64> = (0..=k).map(|j| sign(j) * x[j]).collect();
    if variant == ChainVariant::SolvePenultimate {
        folded[k] = -sign(k) * x[k];
    }
    (0..=m).map(|j| folded[j.min(m - j)]).collect()
}

fn validate_cosines(c: &[f64]) -> Result<()> {
    if c.iter().any(|x| !x.is_finite() || !(0.0..1.0).contains(x)) {
        return Err(Error::invalid("cosines must lie in [0, 1)"));
    }
    if c.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::invalid("cosines must be nondecreasing"));
    }
    Ok(())
}

/// Solves the degree `m = 2r + l + 1` anti-diagonal equation so that
/// `|s_{j,m-j}|` is the `j`-th cosine for `j < r`, and the remaining middle
/// entries have absolute values `1` (`l` times) and `|λ|` (twice).
pub fn antidiagonal_solution(d: usize, l: usize, r: usize, cosines: &[f64]) -> Result<AntidiagonalSolution> {
    check_degree(d)?;
    if d < 3 {
        return Err(Error::invalid("anti-diagonal solutions need d >= 3"));
    }
    let m = 2 * r + l + 1;
    if m > d {
        return Err(Error::invalid(format!("m = 2r + l + 1 = {m} exceeds d = {d}")));
    }
    if m == 1 {
        return Err(Error::invalid("m = 1 only admits the zero solution"));
    }
    if cosines.len() != r {
        return Err(Error::invalid(format!("expected {r} cosines, got {}", cosines.len())));
    }
    validate_cosines(cosines)?;
    let k = m / 2;
    let eps = chain_weights(d, m);
    let mut knowns = cosines.to_vec();
    let variant = if m % 2 == 1 {
        // Pairs r..k-1 carry the l ones; the centre pair (k, k+1) is λ.
        knowns.resize(k, 1.0);
        ChainVariant::SolveLast
    } else {
        // Pairs r..k-2 and the centre carry the ones; pair k-1 is λ.
        knowns.resize(k - 1, 1.0);
        knowns.push(1.0);
        ChainVariant::SolvePenultimate
    };
    let problem = ChainProblem {
        epsilons: eps,
        knowns,
        variant,
    };
    let lambda = solve_chain(&problem)?;
    let x = problem.full_values(lambda);
    let values = unfold(m, &x, variant);
    let (residual, scale) = antidiagonal_sum(d, m, &values);
    if residual > ANTIDIAG_TOL * scale.max(1.0) {
        return Err(Error::numeric("anti-diagonal equation not satisfied", residual));
    }
    Ok(AntidiagonalSolution {
        d,
        m,
        values,
        lambda,
        residual,
    })
}

/// `l = 2d + 1 - n` and `r = ⌊(d - l - 1)/2⌋`, after checking
/// `d >= 3` and `d + 2 <= n <= 2d + 1`.
pub fn existence_shape(d: usize, n: usize) -> Result<(usize, usize)> {
    check_degree(d)?;
    if d < 3 {
        return Err(Error::invalid("the block construction needs d >= 3"));
    }
    if n < d + 2 || n > 2 * d + 1 {
        return Err(Error::invalid(format!(
            "n = {n} outside d + 2 <= n <= 2d + 1 (= {}..={})",
            d + 2,
            2 * d + 1
        )));
    }
    let l = 2 * d + 1 - n;
    Ok((l, (d - l - 1) / 2))
}

/// Parameters of the block construction.
///
/// The anti-diagonal of degree `m = 2r + l + 1` is `μ s + i√(1-μ²) t`, where
/// `s` and `t` are the anti-diagonal solutions for `cos_a` and `cos_b`.
/// `free`, when present, holds the `A`, `B` blocks and the off-anti-diagonal
/// part of `C`, embedded in a `(d+1) x (d+1)` symmetric matrix; see
/// [`free_block_basis`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExistenceSpec {
    pub d: usize,
    pub n: usize,
    pub cos_a: Vec<f64>,
    pub cos_b: Vec<f64>,
    pub mu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<SymmetricQuadric>,
}

impl ExistenceSpec {
    /// `A = B = 0`, `μ = 1/2`, cosines spread over `[0.2, 0.6]` and
    /// `[0.1, 0.5]`.
    pub fn default_for(d: usize, n: usize) -> Result<Self> {
        let (_, r) = existence_shape(d, n)?;
        let spread = |lo: f64, hi: f64| -> Vec<f64> {
            (0..r)
                .map(|i| if r == 1 { lo } else { lo + (hi - lo) * i as f64 / (r - 1) as f64 })
                .collect()
        };
        Ok(ExistenceSpec {
            d,
            n,
            cos_a: spread(0.2, 0.6),
            cos_b: spread(0.1, 0.5),
            mu: 0.5,
            free: None,
        })
    }

    pub fn l(&self) -> usize {
        2 * self.d + 1 - self.n
    }

    pub fn m(&self) -> Result<usize> {
        let (l, r) = existence_shape(self.d, self.n)?;
        Ok(2 * r + l + 1)
    }

    fn validate(&self) -> Result<(usize, usize)> {
        let (l, r) = existence_shape(self.d, self.n)?;
        if self.cos_a.len() != r || self.cos_b.len() != r {
            return Err(Error::invalid(format!("expected {r} cosines in each angle set")));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::invalid("μ must lie in [0, 1]"));
        }
        if let Some(f) = &self.free {
            if f.d() != self.d {
                return Err(Error::invalid("free blocks have the wrong size"));
            }
            let m = 2 * r + l + 1;
            let support = free_support(m, r);
            for i in 0..=self.d {
                for j in i..=self.d {
                    if f.entry(i, j) != ZERO && !support.contains(&(i, j)) {
                        return Err(Error::invalid(format!("free blocks may not touch entry ({i}, {j})")));
                    }
                }
            }
        }
        Ok((l, r))
    }
}

/// Upper-triangle positions of `A`, `B` and `ᵗC` off the degree-`m`
/// anti-diagonal.
fn free_support(m: usize, r: usize) -> Vec<(usize, usize)> {
    let outer: Vec<usize> = (0..r).chain(m + 1 - r..=m).collect();
    let mut out = Vec::new();
    for (a, &i) in outer.iter().enumerate() {
        for &j in &outer[a..] {
            if i + j != m {
                out.push((i, j));
            }
        }
    }
    out
}

/// Real basis of the free blocks compatible with the membership equations:
/// symmetric matrices supported on `A`, `B` and the off-anti-diagonal part of
/// `C` that contain the Veronese curve.
pub fn free_block_basis(d: usize, n: usize) -> Result<Vec<SymmetricQuadric>> {
    let (l, r) = existence_shape(d, n)?;
    let m = 2 * r + l + 1;
    let support = free_support(m, r);
    let sys = membership_system(d, 0)?;
    let cols: Vec<usize> = support
        .iter()
        .flat_map(|&(i, j)| {
            let k = unknown_index(d, i, j);
            [2 * k, 2 * k + 1]
        })
        .collect();
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<f64>> = sys.rows.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
    real_kernel(&rows, cols.len())?
        .into_iter()
        .map(|v| {
            let mut x = vec![0.0; 2 * num_unknowns(d)];
            for (&c, val) in cols.iter().zip(v) {
                x[c] = val;
            }
            SymmetricQuadric::from_real_coords(d, &x)
        })
        .collect()
}

/// `2r(2r-5) + 9`, the parameter count of the block family for
/// `d + 5 <= n <= 2d + 1`; `None` outside that range.
pub fn family_dimension_bound(d: usize, n: usize) -> Option<usize> {
    if n < d + 5 {
        return None;
    }
    let (_, r) = existence_shape(d, n).ok()?;
    let r = r as i64;
    Some((2 * r * (2 * r - 5) + 9) as usize)
}

/// A certified member of `S_{d,n} \ S_{d,n-1}`.
#[derive(Debug, Clone, Serialize)]
pub struct ExistenceMatrix {
    pub quadric: SymmetricQuadric,
    pub m: usize,
    pub r: usize,
    pub l: usize,
    /// Absolute value of the mixed λ entry.
    pub lambda: f64,
    /// Largest singular value of `[[A, ᵗC], [C, B]]`.
    pub outer_norm: f64,
    pub spectrum: Vec<f64>,
    pub one_multiplicity: usize,
    /// Largest singular value not clustered at 1.
    pub next_below_one: f64,
    pub membership_residual: f64,
}

/// Assembles `S` without certifying its spectrum.
fn assemble(spec: &ExistenceSpec, l: usize, r: usize) -> Result<(ComplexMatrix, f64)> {
    let d = spec.d;
    let m = 2 * r + l + 1;
    let s = antidiagonal_solution(d, l, r, &spec.cos_a)?;
    let t = antidiagonal_solution(d, l, r, &spec.cos_b)?;
    let (mu, nu) = (spec.mu, (1.0 - spec.mu * spec.mu).max(0.0).sqrt());
    let mut mat = match &spec.free {
        Some(f) => f.matrix().clone(),
        None => ComplexMatrix::zeros(d + 1, d + 1),
    };
    for j in 0..=m {
        mat[(j, m - j)] = C64::new(mu * s.values[j], nu * t.values[j]);
    }
    let lambda = C64::new(mu * s.lambda, nu * t.lambda).norm();
    Ok((mat, lambda))
}

/// The block matrix `diag{[[A, 0, ᵗC], [0, D, 0], [C, 0, B]], 0}` with
/// singular value 1 of multiplicity exactly `l = 2d + 1 - n`.
///
/// The value placed at `(j, m-j)` is the `j`-th entry of the anti-diagonal
/// solution, so the `C` block carries it at `c_{r-1-j, j}`.
pub fn build_existence_matrix(spec: &ExistenceSpec, tol: &Tolerances) -> Result<ExistenceMatrix> {
    let (l, r) = spec.validate()?;
    let d = spec.d;
    let m = 2 * r + l + 1;
    let (mat, lambda) = assemble(spec, l, r)?;
    let quadric = SymmetricQuadric::new(d, mat)?;

    let residual = membership_system(d, 0)?.residual(&quadric);
    if residual > tol.rel * quadric.matrix().frobenius_norm().max(1.0) {
        let msg = "free blocks violate the membership equations";
        return Err(if spec.free.is_some() {
            Error::invalid(format!("{msg} (residual {residual:.3e})"))
        } else {
            Error::numeric(msg, residual)
        });
    }

    let outer: Vec<usize> = (0..r).chain(m + 1 - r..=m).collect();
    let block = ComplexMatrix::from_fn(outer.len(), outer.len(), |i, j| quadric.entry(outer[i], outer[j]));
    let outer_norm = if outer.is_empty() {
        0.0
    } else {
        svd_with(&block, tol)?.spectrum.max()
    };
    if outer_norm >= 1.0 - SPECTRAL_MARGIN {
        return Err(Error::invalid(format!(
            "invalid spec: [[A, ᵗC], [C, B]] has norm {outer_norm:.6} >= 1 - {SPECTRAL_MARGIN}"
        )));
    }
    if lambda >= 1.0 - SPECTRAL_MARGIN {
        return Err(Error::invalid(format!(
            "invalid spec: |λ| = {lambda:.6} >= 1 - {SPECTRAL_MARGIN}"
        )));
    }

    let spectrum = svd_with(quadric.matrix(), tol)?.spectrum;
    let ones = spectrum.count_near(1.0, tol.cluster);
    let next = spectrum
        .values
        .iter()
        .copied()
        .filter(|v| (v - 1.0).abs() > tol.cluster)
        .fold(0.0, f64::max);
    if ones != l || next >= 1.0 - SPECTRAL_MARGIN {
        return Err(Error::numeric(
            format!(
                "expected singular value 1 with multiplicity {l}, found {ones}; spectrum {:?}",
                spectrum.values
            ),
            (next - 1.0).abs(),
        ));
    }
    Ok(ExistenceMatrix {
        quadric,
        m,
        r,
        l,
        lambda,
        outer_norm,
        spectrum: spectrum.values,
        one_multiplicity: ones,
        next_below_one: next,
        membership_residual: residual,
    })
}

/// Parameter vector `(cos_a, cos_b, μ, c)` of the family through `spec`,
/// where `c` are coordinates on `basis`.
pub fn family_parameters(spec: &ExistenceSpec, basis: &[SymmetricQuadric]) -> Vec<f64> {
    let mut p = spec.cos_a.clone();
    p.extend(&spec.cos_b);
    p.push(spec.mu);
    let x = spec.free.as_ref().map(|f| f.to_real_coords());
    for b in basis {
        let c = match &x {
            Some(x) => b.to_real_coords().iter().zip(x).map(|(u, v)| u * v).sum(),
            None => 0.0,
        };
        p.push(c);
    }
    p
}

/// The `ExistenceSpec` with parameters `p`, laid out as in [`family_parameters`].
pub fn spec_from_parameters(d: usize, n: usize, basis: &[SymmetricQuadric], p: &[f64]) -> Result<ExistenceSpec> {
    let (_, r) = existence_shape(d, n)?;
    if p.len() != 2 * r + 1 + basis.len() {
        return Err(Error::invalid("parameter vector has the wrong length"));
    }
    let free = if basis.is_empty() {
        None
    } else {
        let mut x = vec![0.0; 2 * num_unknowns(d)];
        for (b, c) in basis.iter().zip(&p[2 * r + 1..]) {
            for (o, v) in x.iter_mut().zip(b.to_real_coords()) {
                *o += c * v;
            }
        }
        Some(SymmetricQuadric::from_real_coords(d, &x)?)
    };
    Ok(ExistenceSpec {
        d,
        n,
        cos_a: p[..r].to_vec(),
        cos_b: p[r..2 * r].to_vec(),
        mu: p[2 * r],
        free,
    })
}

/// Numeric rank of the Jacobian of `parameters -> S` at `spec`, by central
/// differences with step `h`.
pub fn family_jacobian_rank(spec: &ExistenceSpec, basis: &[SymmetricQuadric], h: f64) -> Result<usize> {
    let (l, r) = spec.validate()?;
    let p0 = family_parameters(spec, basis);
    let eval = |p: &[f64]| -> Result<Vec<f64>> {
        let s = spec_from_parameters(spec.d, spec.n, basis, p)?;
        let (mat, _) = assemble(&s, l, r)?;
        Ok(SymmetricQuadric::new(spec.d, mat)?.to_real_coords())
    };
    let mut cols = Vec::with_capacity(p0.len());
    for i in 0..p0.len() {
        let mut plus = p0.clone();
        let mut minus = p0.clone();
        plus[i] += h;
        minus[i] -= h;
        let (fp, fm) = (eval(&plus)?, eval(&minus)?);
        cols.push(fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<f64>>());
    }
    if cols.is_empty() {
        return Ok(0);
    }
    let n_out = cols[0].len();
    let jac = ComplexMatrix::from_fn(n_out, cols.len(), |i, j| C64::new(cols[j][i], 0.0));
    let vals = svd_with(&jac, &Tolerances::default())?.spectrum.values;
    let smax = vals.last().copied().unwrap_or(0.0);
    Ok(vals.iter().filter(|&&v| smax > 0.0 && v > 1e-6 * smax).count())
}

/// `S = diag{antidiag(s_{0,m}, ..., s_{m,0}), 0_q}` with `m = d - q` and
/// every anti-diagonal entry nonzero, so that 0 is a singular value of
/// multiplicity exactly `q`.
pub fn prescribed_zero_multiplicity(d: usize, q: usize) -> Result<SymmetricQuadric> {
    check_degree(d)?;
    if q > d {
        return Err(Error::invalid(format!("q = {q} exceeds d = {d}")));
    }
    let m = d - q;
    if m <= 1 {
        return Err(Error::Degenerate(format!(
            "m = d - q = {m}: the anti-diagonal equation forces every entry to vanish"
        )));
    }
    let k = m / 2;
    let eps = chain_weights(d, m);
    // Positive knowns in the regime where the solved entry is nonzero, kept
    // at most 1/2 so that S stays a contraction.
    let (knowns, variant) = if m % 2 == 1 {
        let v: Vec<f64> = (0..k).map(|j| 0.5 * (j + 1) as f64 / k as f64).collect();
        (v, ChainVariant::SolveLast)
    } else {
        let mut v: Vec<f64> = (0..k - 1).map(|j| 0.25 * (j + 1) as f64 / (k - 1) as f64).collect();
        v.push(0.5);
        (v, ChainVariant::SolvePenultimate)
    };
    let x_new = chain_value(&eps, &knowns, variant);
    let problem = ChainProblem {
        epsilons: eps,
        knowns,
        variant,
    };
    let x = problem.full_values(x_new);
    let values = unfold(m, &x, variant);
    if values.iter().any(|v| v.abs() < 1e-12) {
        return Err(Error::numeric("an anti-diagonal entry vanished", 0.0));
    }
    let (residual, scale) = antidiagonal_sum(d, m, &values);
    if residual > ANTIDIAG_TOL * scale.max(1.0) {
        return Err(Error::numeric("anti-diagonal equation not satisfied", residual));
    }
    let mut mat = ComplexMatrix::zeros(d + 1, d + 1);
    for j in 0..=m {
        mat[(j, m - j)] = C64::new(values[j], 0.0);
    }
    SymmetricQuadric::new(d, mat)
}
