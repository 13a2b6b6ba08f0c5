use alloc::vec::Vec;

use super::OccurrenceList;
use crate::cdf::ecdf_from_sorted;
use crate::{Error, Result, StepCdf};

/// Consecutive differences of occurrence positions. The censored stretch
/// after the last occurrence is not a gap.
pub fn return_gaps(occ: &OccurrenceList) -> Result<Vec<u64>> {
    kth_return_samples(occ, 1)
}

/// `positions[j + k] - positions[j]` for every admissible `j`.
pub fn kth_return_samples(occ: &OccurrenceList, k: usize) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let pos = occ.positions();
    if pos.len() < k + 1 {
        return Err(Error::InsufficientOccurrences {
            needed: k + 1,
            found: pos.len(),
        });
    }
    Ok(pos
        .iter()
        .zip(&pos[k..])
        .map(|(a, b)| (b - a) as u64)
        .collect())
}

/// Empirical law of the normalized return time: the ECDF of `mu_hat * g`.
pub fn return_cdf(gaps: &[u64], mu_hat: f64) -> Result<StepCdf> {
    if gaps.is_empty() {
        return Err(Error::NoSamples);
    }
    if !(mu_hat > 0.0 && mu_hat.is_finite()) {
        return Err(Error::InvalidParameter("mu_hat must be positive".into()));
    }
    let mut sorted = gaps.to_vec();
    sorted.sort_unstable();
    let normalized: Vec<f64> = sorted.iter().map(|&g| mu_hat * g as f64).collect();
    Ok(ecdf_from_sorted(&normalized))
}

/// Sample mean of `mu_hat * g`; close to 1 by Kac's theorem.
pub fn mean_normalized_gap(gaps: &[u64], mu_hat: f64) -> f64 {
    let total: u64 = gaps.iter().sum();
    mu_hat * total as f64 / gaps.len() as f64
}
