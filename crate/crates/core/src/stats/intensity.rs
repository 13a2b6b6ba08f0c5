use serde::{Deserialize, Serialize};

use crate::analytic::exp_law;
use crate::{EvalGrid, StepCdf};

/// Largest positive and negative deviation of a hitting-time law from the
/// unit exponential, with the points where they are attained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Intensities {
    /// `max_t (F(t) - (1 - e^-t))_+`
    pub eps_repel: f64,
    pub t_repel: f64,
    /// `max_t ((1 - e^-t) - F(t))_+`
    pub eps_attract: f64,
    pub t_attract: f64,
}

impl Intensities {
    /// Sup-norm distance to the exponential law over the evaluated points.
    pub fn ks(&self) -> f64 {
        self.eps_repel.max(self.eps_attract)
    }
}

/// Deviations of `cdf` from `1 - e^-t`, evaluated on the grid, at every jump
/// of `cdf` and at the left limit of every jump. Since the exponential law is
/// continuous and increasing, this is the exact supremum over the closed
/// range spanned by those points.
pub fn intensities(cdf: &StepCdf, grid: &EvalGrid) -> Intensities {
    let mut best = Tracker::default();
    for &t in grid.points() {
        best.offer(t, cdf.at(t) - exp_law(t));
    }
    for (i, (&t, &v)) in cdf.jumps().iter().zip(cdf.values()).enumerate() {
        let e = exp_law(t);
        best.offer(t, v - e);
        best.offer(t, cdf.left_limit(i) - e);
    }
    best.finish()
}

pub fn ks_to_exponential(cdf: &StepCdf, grid: &EvalGrid) -> f64 {
    intensities(cdf, grid).ks()
}

pub(crate) struct Tracker {
    repel: (f64, f64),
    attract: (f64, f64),
}

impl Default for Tracker {
    fn default() -> Self {
        Self {
            repel: (f64::NEG_INFINITY, 0.0),
            attract: (f64::NEG_INFINITY, 0.0),
        }
    }
}

impl Tracker {
    pub(crate) fn offer(&mut self, t: f64, diff: f64) {
        if diff > self.repel.0 {
            self.repel = (diff, t);
        }
        if -diff > self.attract.0 {
            self.attract = (-diff, t);
        }
    }

    pub(crate) fn finish(self) -> Intensities {
        Intensities {
            eps_repel: self.repel.0.max(0.0),
            t_repel: self.repel.1,
            eps_attract: self.attract.0.max(0.0),
            t_attract: self.attract.1,
        }
    }
}
