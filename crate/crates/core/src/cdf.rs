//! Right-continuous step distribution functions on `[0, inf)`.

use alloc::format;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A right-continuous nondecreasing step function with values in `[0, 1]`.
///
/// The value on `[0, jumps[0])` is 0, the value on `[jumps[i], jumps[i + 1])`
/// is `values[i]` and the value after the last jump is `values[last]`. The
/// final value may be below 1 (a sub-distribution, e.g. an oracle law
/// truncated at a horizon).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepCdf")]
pub struct StepCdf {
    jumps: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawStepCdf {
    jumps: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawStepCdf> for StepCdf {
    type Error = Error;

    fn try_from(raw: RawStepCdf) -> Result<Self> {
        StepCdf::new(raw.jumps, raw.values)
    }
}

impl StepCdf {
    pub fn new(jumps: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if jumps.len() != values.len() {
            return Err(Error::InvalidCdf(format!(
                "{} jumps but {} values",
                jumps.len(),
                values.len()
            )));
        }
        if jumps.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InvalidCdf(
                "jumps must be finite and nonnegative".into(),
            ));
        }
        if jumps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCdf(
                "jumps must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidCdf("values must lie in [0, 1]".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidCdf("values must be nondecreasing".into()));
        }
        Ok(Self { jumps, values })
    }

    /// The indicator `1_[at, inf)`.
    pub fn point_mass(at: f64) -> Result<Self> {
        Self::new(alloc::vec![at], alloc::vec![1.0])
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn final_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.at(t))
    }

    /// Evaluation without the sign check; any `t` below the first jump maps to 0.
    pub fn at(&self, t: f64) -> f64 {
        let i = self.jumps.partition_point(|&x| x <= t);
        if i == 0 {
            0.0
        } else {
            self.values[i - 1]
        }
    }

    /// Value just before the `i`-th jump.
    pub fn left_limit(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.values[i - 1]
        }
    }

    /// `int_0^t (1 - F(s)) ds`, exact from the step structure.
    pub fn integral_of_survival(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(SurvivalIntegral::new(self).at(t))
    }

    /// The mean of the distribution, `int_0^inf (1 - F)`, or `None` when the
    /// function never reaches 1.
    pub fn mean(&self) -> Option<f64> {
        if self.final_value() < 1.0 {
            return None;
        }
        let last = *self.jumps.last()?;
        Some(SurvivalIntegral::new(self).at(last))
    }
}

/// Prefix table for repeated evaluation of `int_0^t (1 - F)`.
#[derive(Clone, Debug)]
pub struct SurvivalIntegral<'a> {
    cdf: &'a StepCdf,
    prefix: Vec<f64>,
}

impl<'a> SurvivalIntegral<'a> {
    pub fn new(cdf: &'a StepCdf) -> Self {
        let mut prefix = Vec::with_capacity(cdf.jumps.len());
        let mut acc = 0.0;
        let mut prev = 0.0;
        let mut survival = 1.0;
        for (t, v) in cdf.jumps.iter().zip(&cdf.values) {
            acc += (t - prev) * survival;
            prefix.push(acc);
            prev = *t;
            survival = 1.0 - v;
        }
        Self { cdf, prefix }
    }

    /// Integral up to `t`; `t` is assumed nonnegative.
    pub fn at(&self, t: f64) -> f64 {
        let i = self.cdf.jumps.partition_point(|&x| x <= t);
        if i == 0 {
            t
        } else {
            self.prefix[i - 1] + (t - self.cdf.jumps[i - 1]) * (1.0 - self.cdf.values[i - 1])
        }
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(Error::NegativeTime(t))
    } else {
        Ok(())
    }
}

/// Empirical distribution function of nonnegative samples.
pub fn ecdf_from_samples(samples: &[f64]) -> Result<StepCdf> {
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    if samples.iter().any(|s| !s.is_finite() || *s < 0.0) {
        return Err(Error::InvalidCdf(
            "samples must be finite and nonnegative".into(),
        ));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(ecdf_from_sorted(&sorted))
}

/// ECDF of an already sorted, validated, nonempty sample.
pub(crate) fn ecdf_from_sorted(sorted: &[f64]) -> StepCdf {
    let total = sorted.len() as f64;
    let mut jumps = Vec::new();
    let mut values = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        while i < sorted.len() && sorted[i] == x {
            i += 1;
        }
        jumps.push(x);
        values.push(i as f64 / total);
    }
    StepCdf { jumps, values }
}
