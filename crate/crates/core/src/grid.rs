use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Sorted, strictly positive, finite evaluation points for continuous-time
/// functionals such as `G_B` and the intensities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalGrid {
    points: Vec<f64>,
}

impl EvalGrid {
    pub const DEFAULT_LOW: f64 = 0.01;
    pub const DEFAULT_HIGH: f64 = 10.0;
    pub const DEFAULT_COUNT: usize = 256;

    pub fn new(mut points: Vec<f64>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err(Error::InvalidGrid(
                "points must be finite and positive".into(),
            ));
        }
        points.sort_by(f64::total_cmp);
        points.dedup();
        Ok(Self { points })
    }

    /// `count` geometrically spaced points from `low` to `high` inclusive.
    pub fn geometric(low: f64, high: f64, count: usize) -> Result<Self> {
        if !(low > 0.0 && high > low && low.is_finite() && high.is_finite()) || count < 2 {
            return Err(Error::InvalidGrid(
                "need 0 < low < high and count >= 2".into(),
            ));
        }
        let ratio = libm::pow(high / low, 1.0 / (count - 1) as f64);
        let mut points: Vec<f64> = (0..count)
            .map(|i| low * libm::pow(ratio, i as f64))
            .collect();
        points[count - 1] = high;
        Self::new(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The grid augmented with extra points; nonpositive extras are skipped.
    pub fn with_points(&self, extra: &[f64]) -> Self {
        let mut points = Vec::with_capacity(self.points.len() + extra.len());
        let mut a = self.points.iter().peekable();
        let mut b = extra
            .iter()
            .filter(|p| **p > 0.0 && p.is_finite())
            .peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x <= y {
                        a.next();
                        x
                    } else {
                        b.next();
                        y
                    }
                }
                (Some(&&x), None) => {
                    a.next();
                    x
                }
                (None, Some(&&y)) => {
                    b.next();
                    y
                }
                (None, None) => break,
            };
            if points.last() != Some(&next) {
                points.push(next);
            }
        }
        if extra.windows(2).any(|w| w[0] > w[1]) {
            points.sort_by(f64::total_cmp);
            points.dedup();
        }
        Self { points }
    }
}

impl Default for EvalGrid {
    fn default() -> Self {
        Self::geometric(Self::DEFAULT_LOW, Self::DEFAULT_HIGH, Self::DEFAULT_COUNT)
            .expect("default grid parameters are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn default_grid_shape() {
        let grid = EvalGrid::default();
        assert_eq!(grid.len(), 256);
        assert_eq!(grid.points()[0], 0.01);
        assert_eq!(grid.points()[255], 10.0);
        assert!(grid.points().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn augmenting_merges_and_dedups() {
        let grid = EvalGrid::new(vec![1.0, 2.0, 3.0]).unwrap();
        let merged = grid.with_points(&[0.0, 2.0, 2.5, 12.0]);
        assert_eq!(merged.points(), &[1.0, 2.0, 2.5, 3.0, 12.0]);
        let unsorted = grid.with_points(&[5.0, 0.5]);
        assert_eq!(unsorted.points(), &[0.5, 1.0, 2.0, 3.0, 5.0]);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(EvalGrid::new(vec![0.0, 1.0]).is_err());
        assert!(EvalGrid::new(vec![f64::INFINITY]).is_err());
    }
}
