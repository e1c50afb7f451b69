use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A maximal run of (numerically) equal singular values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub start: usize,
    pub len: usize,
}

impl Cluster {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// Groups sorted values into maximal runs whose consecutive gaps are at
/// most `tol`.
pub fn cluster(values: &[f64], tol: f64) -> Result<Vec<Cluster>> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("cluster tolerance must be positive, got {tol}")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("cluster input has non-finite values"));
    }
    if values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("cluster input is not sorted nondecreasing"));
    }
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol {
            if i > start {
                out.push(Cluster { start, len: i - start });
            }
            start = i;
        }
    }
    Ok(out)
}

/// Nondecreasing singular values with their clusters and angle
/// parameters `a_j = arccos(σ_j)/2` (defined when `σ_j ≤ 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub angles: Vec<Option<f64>>,
}

impl SingularSpectrum {
    pub fn new(values: Vec<f64>, cluster_tol: f64) -> Result<Self> {
        if values.iter().any(|&v| v < 0.0) {
            return Err(Error::invalid("singular values must be nonnegative"));
        }
        let clusters = cluster(&values, cluster_tol)?;
        let angles = values
            .iter()
            .map(|&s| if s <= 1.0 { Some(0.5 * s.acos()) } else { None })
            .collect();
        Ok(SingularSpectrum { values, clusters, angles })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Multiplicities `r_j` of the clusters, in order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|c| c.len).collect()
    }

    /// Size of the cluster containing `target`, if some cluster lies within
    /// `tol` of it.
    pub fn multiplicity_of(&self, target: f64, tol: f64) -> usize {
        self.clusters
            .iter()
            .find(|c| c.range().any(|i| (self.values[i] - target).abs() <= tol))
            .map_or(0, |c| c.len)
    }

    /// Number of values within `tol` of `target`.
    pub fn count_near(&self, target: f64, tol: f64) -> usize {
        self.values.iter().filter(|v| (*v - target).abs() <= tol).count()
    }

    pub fn max_abs_diff(&self, other: &[f64]) -> f64 {
        if other.len() != self.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(values: &[f64], tol: f64) -> Vec<usize> {
        cluster(values, tol).unwrap().iter().map(|c| c.len).collect()
    }

    #[test]
    fn clusters_zero_and_one() {
        assert_eq!(sizes(&[0.0, 0.0, 1.0], 1e-8), vec![2, 1]);
    }

    #[test]
    fn clusters_degree_three_h35() {
        assert_eq!(sizes(&[1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0], 1e-8), vec![2, 2]);
    }

    #[test]
    fn gap_below_tolerance_merges() {
        assert_eq!(sizes(&[0.1, 0.1 + 5e-9, 0.5], 1e-8), vec![2, 1]);
    }

    #[test]
    fn unsorted_is_rejected() {
        assert!(cluster(&[0.5, 0.1], 1e-8).is_err());
        assert!(cluster(&[0.1, 0.5], 0.0).is_err());
    }

    #[test]
    fn empty_input_has_no_clusters() {
        assert!(cluster(&[], 1e-8).unwrap().is_empty());
    }

    #[test]
    fn angles_invert_cosine() {
        let s = SingularSpectrum::new(vec![0.0, 0.25, 1.0, 1.5], 1e-8).unwrap();
        for (v, a) in s.values.iter().zip(&s.angles) {
            match a {
                Some(a) => {
                    assert!((0.0..=std::f64::consts::FRAC_PI_4 + 1e-15).contains(a));
                    assert!(((2.0 * a).cos() - v).abs() < 1e-15);
                }
                None => assert!(*v > 1.0),
            }
        }
    }
}
