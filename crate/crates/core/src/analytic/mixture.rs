use alloc::vec::Vec;

use crate::cdf::SurvivalIntegral;
use crate::{Error, Result, StepCdf};

/// A finite family is accepted when the first omitted weight
/// `p (1 - p)^K` is below this.
pub const MIXTURE_TRUNCATION: f64 = 1e-9;

/// `G(t) = sum_k p (1 - p)^(k-1) * p * int_0^(t/p) (1 - F_k)` where `F_k`,
/// the `k`-th member of `family` (1-based), must have mean `k`.
pub fn lemma0_mixture(p: f64, family: &[StepCdf], t: f64) -> Result<f64> {
    Ok(lemma0_mixture_on_grid(p, family, &[t])?[0])
}

/// [`lemma0_mixture`] at several times, validating the family once.
pub fn lemma0_mixture_on_grid(p: f64, family: &[StepCdf], ts: &[f64]) -> Result<Vec<f64>> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter("p must lie in (0, 1)".into()));
    }
    if let Some(&t) = ts.iter().find(|t| t.is_nan() || **t < 0.0) {
        return Err(Error::NegativeTime(t));
    }
    if family.is_empty() {
        return Err(Error::InvalidParameter("empty family".into()));
    }
    let q = 1.0 - p;
    let omitted = p * libm::pow(q, family.len() as f64);
    if omitted >= MIXTURE_TRUNCATION {
        return Err(Error::InvalidParameter(alloc::format!(
            "family of {} laws truncates weight {omitted:e}",
            family.len()
        )));
    }
    for (i, f) in family.iter().enumerate() {
        let k = (i + 1) as f64;
        let found = f.mean().unwrap_or(f64::INFINITY);
        if (found - k).abs() > 1e-9 * k {
            return Err(Error::MeanViolation { expected: k, found });
        }
    }
    let integrals: Vec<SurvivalIntegral> = family.iter().map(SurvivalIntegral::new).collect();
    Ok(ts
        .iter()
        .map(|&t| {
            let mut w = p;
            let mut g = 0.0;
            for integral in &integrals {
                g += w * p * integral.at(t / p);
                w *= q;
            }
            g
        })
        .collect())
}
