use alloc::vec::Vec;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::intensity::Tracker;
use super::{
    mean_normalized_gap, return_cdf, return_gaps, scan_occurrences, Intensities, OccurrenceList,
};
use crate::analytic::exp_law;
use crate::cdf::{ecdf_from_sorted, SurvivalIntegral};
use crate::{rng, Block, Error, EvalGrid, Result, StepCdf, SymbolSequence};

/// `G(t) = int_0^t (1 - F~(s)) ds` sampled at a set of points that includes
/// every jump of `F~`. Between consecutive points `G` is exactly linear, so
/// the samples determine it on `[0, last point]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GCurve {
    pub points: Vec<f64>,
    pub values: Vec<f64>,
}

impl GCurve {
    /// `G` at `t` by linear interpolation; constant after the last point.
    pub fn at(&self, t: f64) -> f64 {
        let i = self.points.partition_point(|&x| x <= t);
        if i == self.points.len() {
            return self.values.last().copied().unwrap_or(t);
        }
        let (t0, g0) = if i == 0 {
            (0.0, 0.0)
        } else {
            (self.points[i - 1], self.values[i - 1])
        };
        g0 + (t - t0) * (self.values[i] - g0) / (self.points[i] - t0)
    }

    /// Exact deviations of the piecewise-linear `G` from `1 - e^-t` on
    /// `[0, last point]`. `G - (1 - e^-t)` is convex on every linear piece,
    /// so the repelling maximum sits at a sample point; the attracting one
    /// may also sit where the slope of `G` equals `e^-t`.
    pub fn intensities(&self) -> Intensities {
        let mut best = Tracker::default();
        let (mut t0, mut g0) = (0.0, 0.0);
        best.offer(0.0, 0.0);
        for (&t1, &g1) in self.points.iter().zip(&self.values) {
            let slope = (g1 - g0) / (t1 - t0);
            if slope > 0.0 && slope < 1.0 {
                let t = -libm::log(slope);
                if t > t0 && t < t1 {
                    best.offer(t, g0 + (t - t0) * slope - exp_law(t));
                }
            }
            best.offer(t1, g1 - exp_law(t1));
            (t0, g0) = (t1, g1);
        }
        best.finish()
    }
}

/// Hitting-time estimate obtained from the return-time law.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HittingViaG {
    /// `G` on the evaluation grid merged with the jumps of the return law.
    pub g_curve: GCurve,
    /// Step version of the same curve, value `G(t_i)` on `[t_i, t_{i+1})`,
    /// for consumers that need a [`StepCdf`]. `G` is 1-Lipschitz, so it is
    /// within one mesh width of `G`; the true hitting law lies in
    /// `[G - mu, G]`.
    pub hitting_cdf: StepCdf,
    /// The width `mu_hat` of the sandwich band.
    pub band: f64,
}

pub fn hitting_cdf_via_g(
    return_cdf: &StepCdf,
    mu_hat: f64,
    grid: &EvalGrid,
) -> Result<HittingViaG> {
    if !(mu_hat > 0.0 && mu_hat <= 1.0) {
        return Err(Error::InvalidParameter("mu_hat must lie in (0, 1]".into()));
    }
    let merged = grid.with_points(return_cdf.jumps());
    let integral = SurvivalIntegral::new(return_cdf);
    let points = merged.points().to_vec();
    let mut values = Vec::with_capacity(points.len());
    let mut prev = 0.0f64;
    for &t in &points {
        // Running max guards against rounding in the prefix sums.
        let g = integral.at(t).clamp(0.0, 1.0).max(prev);
        values.push(g);
        prev = g;
    }
    let hitting_cdf = StepCdf::new(points.clone(), values.clone())?;
    Ok(HittingViaG {
        g_curve: GCurve { points, values },
        hitting_cdf,
        band: mu_hat,
    })
}

/// Which starting positions to use for the direct hitting-time estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StartPlan {
    /// `count` uniform starts drawn from the named stream of `seed`.
    Sampled { count: usize, seed: u64 },
    /// Every position of the sequence.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectHitting {
    /// ECDF of `mu_hat * V` over the uncensored starts, where `V` is the
    /// distance to the first occurrence strictly after the start.
    pub cdf: StepCdf,
    pub mu_hat: f64,
    pub starts: usize,
    /// Starts with no later occurrence; excluded from the ECDF.
    pub censored: usize,
}

pub fn hitting_cdf_direct(
    seq: &SymbolSequence,
    block: &Block,
    plan: StartPlan,
) -> Result<DirectHitting> {
    let occ = scan_occurrences(seq, block)?;
    hitting_from_occurrences(&occ, seq.len(), plan)
}

pub fn hitting_from_occurrences(
    occ: &OccurrenceList,
    len: usize,
    plan: StartPlan,
) -> Result<DirectHitting> {
    if occ.count() == 0 {
        return Err(Error::ZeroOccurrences);
    }
    let pos = occ.positions();
    let wait = |s: usize| {
        let i = pos.partition_point(|&x| x <= s);
        pos.get(i).map(|&x| (x - s) as u64)
    };
    let mut waits = Vec::new();
    let starts = match plan {
        StartPlan::Sampled { count, seed } => {
            if count == 0 {
                return Err(Error::InvalidParameter(
                    "start count must be positive".into(),
                ));
            }
            let mut r = rng::stream(seed, "hitting.starts");
            waits.extend((0..count).filter_map(|_| wait(r.gen_range(0..len))));
            count
        }
        StartPlan::Exhaustive => {
            waits.extend((0..len).filter_map(wait));
            len
        }
    };
    let censored = starts - waits.len();
    if waits.is_empty() {
        return Err(Error::NoSamples);
    }
    waits.sort_unstable();
    let mu_hat = occ.mu_hat();
    let normalized: Vec<f64> = waits.iter().map(|&w| mu_hat * w as f64).collect();
    Ok(DirectHitting {
        cdf: ecdf_from_sorted(&normalized),
        mu_hat,
        starts,
        censored,
    })
}

/// Full analysis of one block.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub block: Block,
    pub count: usize,
    pub mu_hat: f64,
    pub mean_normalized_gap: f64,
    pub return_cdf: StepCdf,
    pub hitting: HittingViaG,
    pub intensities: Intensities,
    pub ks_exp: f64,
}

pub fn block_record(seq: &SymbolSequence, block: &Block, grid: &EvalGrid) -> Result<BlockRecord> {
    let occ = scan_occurrences(seq, block)?;
    let gaps = return_gaps(&occ)?;
    let mu_hat = occ.mu_hat();
    let ret = return_cdf(&gaps, mu_hat)?;
    let hitting = hitting_cdf_via_g(&ret, mu_hat, grid)?;
    let intensities = hitting.g_curve.intensities();
    Ok(BlockRecord {
        block: block.clone(),
        count: occ.count(),
        mu_hat,
        mean_normalized_gap: mean_normalized_gap(&gaps, mu_hat),
        return_cdf: ret,
        hitting,
        ks_exp: intensities.ks(),
        intensities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Alphabet, Provenance};
    use alloc::vec;

    fn binary(data: Vec<u8>) -> SymbolSequence {
        let prov = Provenance {
            generator: "test".into(),
            digest: "".into(),
            seed: 0,
        };
        SymbolSequence::new(Alphabet::new(2).unwrap(), data, prov).unwrap()
    }

    #[test]
    fn g_of_unit_indicator_is_capped_line() {
        let f = StepCdf::point_mass(1.0).unwrap();
        let h = hitting_cdf_via_g(&f, 0.25, &EvalGrid::default()).unwrap();
        for (t, g) in h.g_curve.points.iter().zip(&h.g_curve.values) {
            assert!((g - t.min(1.0)).abs() < 1e-12);
        }
        assert_eq!(h.band, 0.25);
    }

    #[test]
    fn curve_intensities_are_exact() {
        // Mean-1 return law; the sup must agree with a dense scan.
        let ret = StepCdf::new(vec![0.5, 1.0, 2.0], vec![0.5, 0.75, 1.0]).unwrap();
        let h = hitting_cdf_via_g(&ret, 0.01, &EvalGrid::default()).unwrap();
        let eps = h.g_curve.intensities();
        let (mut repel, mut attract) = (0.0f64, 0.0f64);
        for i in 0..=200_000 {
            let t = i as f64 * 5e-5;
            let d = h.g_curve.at(t) - exp_law(t);
            repel = repel.max(d);
            attract = attract.max(-d);
        }
        // The scan misses the exact maximizers by at most one step.
        assert!(eps.eps_repel >= repel - 1e-12 && eps.eps_repel - repel < 1e-4);
        assert!(eps.eps_attract >= attract - 1e-12 && eps.eps_attract - attract < 1e-4);
        let integral = SurvivalIntegral::new(&ret);
        for t in [0.3, 0.7, 1.5, 4.0] {
            assert!((h.g_curve.at(t) - integral.at(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn redundant_points_do_not_move_intensities() {
        let ret = StepCdf::new(vec![0.2, 0.9, 1.7], vec![0.3, 0.5, 1.0]).unwrap();
        let a = hitting_cdf_via_g(&ret, 0.1, &EvalGrid::default()).unwrap();
        let dense = EvalGrid::default().with_points(&[0.05, 0.333, 1.0, 1.2, 3.3]);
        let b = hitting_cdf_via_g(&ret, 0.1, &dense).unwrap();
        let (x, y) = (a.g_curve.intensities(), b.g_curve.intensities());
        assert!((x.eps_repel - y.eps_repel).abs() < 1e-12);
        assert!((x.eps_attract - y.eps_attract).abs() < 1e-12);
    }

    #[test]
    fn direct_waits_are_strictly_after() {
        // Block at 2 and 5 in a length-8 sequence.
        let s = binary(vec![0, 0, 1, 0, 0, 1, 0, 0]);
        let b = Block::new(s.alphabet().clone(), vec![1]).unwrap();
        let d = hitting_cdf_direct(&s, &b, StartPlan::Exhaustive).unwrap();
        // Waits: 2,1,3,2,1 from starts 0..=4, starts 5..=7 censored.
        assert_eq!(d.starts, 8);
        assert_eq!(d.censored, 3);
        let mu = 2.0 / 8.0;
        assert_eq!(d.cdf.jumps(), &[mu, 2.0 * mu, 3.0 * mu]);
        assert_eq!(d.cdf.values(), &[0.4, 0.8, 1.0]);
    }

    #[test]
    fn direct_errors() {
        let s = binary(vec![0, 0, 0, 0]);
        let b = Block::new(s.alphabet().clone(), vec![1]).unwrap();
        assert_eq!(
            hitting_cdf_direct(&s, &b, StartPlan::Exhaustive),
            Err(Error::ZeroOccurrences)
        );
        let b = Block::new(s.alphabet().clone(), vec![0]).unwrap();
        assert!(hitting_cdf_direct(&s, &b, StartPlan::Sampled { count: 0, seed: 1 }).is_err());
    }

    #[test]
    fn direct_matches_g_formula_on_periodic_data() {
        // With V measured strictly after the start, F(t) = G(mu * floor(t / mu))
        // exactly when every position is a start.
        let data: Vec<u8> = (0..600).map(|i| [0, 1, 1, 0, 1, 0][i % 6]).collect();
        let s = binary(data);
        let b = Block::new(s.alphabet().clone(), vec![1, 1]).unwrap();
        let occ = scan_occurrences(&s, &b).unwrap();
        let d = hitting_from_occurrences(
            &occ,
            occ.positions().last().unwrap() + 1,
            StartPlan::Exhaustive,
        )
        .unwrap();
        let gaps = return_gaps(&occ).unwrap();
        let ret = return_cdf(&gaps, d.mu_hat).unwrap();
        let integral = SurvivalIntegral::new(&ret);
        for &t in d.cdf.jumps() {
            let g = integral.at(d.mu_hat * (t / d.mu_hat).round());
            assert!((d.cdf.at(t) - g).abs() < 0.02, "t={t}");
        }
    }

    #[test]
    fn record_of_periodic_block() {
        let data: Vec<u8> = (0..400).map(|i| (i % 4 == 0) as u8).collect();
        let s = binary(data);
        let b = Block::new(s.alphabet().clone(), vec![1]).unwrap();
        let r = block_record(&s, &b, &EvalGrid::default()).unwrap();
        assert_eq!(r.count, 100);
        assert_eq!(r.return_cdf, StepCdf::point_mass(1.0).unwrap());
        assert!((r.intensities.eps_repel - (-1.0f64).exp()).abs() < 1e-9);
    }
}
