use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serieslab_core::processes::{
    apply_law_of_series, ConstructionLog, LawOfSeriesParams, ProcessSpec,
};
use serieslab_core::stats::{SummaryOptions, Sweep};
use serieslab_core::SymbolSequence;

use super::{parallel_sweep, GridSpec};
use crate::report::{write_csv, write_json};

/// Hitting-time flatness before and after the construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttractReport {
    pub params: LawOfSeriesParams,
    pub seed: u64,
    pub sample_length: usize,
    pub t_star: f64,
    pub eps_star: f64,
    pub min_count: usize,
    pub grid: GridSpec,
    pub construction: ConstructionLog,
    pub probes: Vec<ProbeRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub n: usize,
    pub before: ProbeMass,
    pub after: ProbeMass,
}

/// Masses of length-`n` blocks by the value of the hitting law at `t*`.
///
/// The hitting law is bracketed by `G - mu_hat <= F <= G`, so a block with
/// `G(t*) < eps*` certainly has `F(t*) < eps*` while one with
/// `G(t*) - mu_hat >= eps*` certainly does not.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeMass {
    /// Mass of resolved blocks with `G(t*) < eps*`.
    pub flat_mass: f64,
    /// Mass of resolved blocks with `G(t*) - mu_hat < eps*`.
    pub flat_mass_upper: f64,
    pub resolved_blocks: usize,
    pub resolved_mass: f64,
    pub unresolved_mass: f64,
}

#[derive(Serialize)]
struct Row {
    seed: u64,
    n: usize,
    flat_mass_before: f64,
    flat_mass_upper_before: f64,
    resolved_mass_before: f64,
    flat_mass_after: f64,
    flat_mass_upper_after: f64,
    resolved_mass_after: f64,
    changed_fraction: f64,
}

/// At most 12 lengths spread evenly over `[N, N^2]`.
pub fn default_probes(window: usize) -> Vec<usize> {
    let (lo, hi) = (window, window * window);
    let span = hi - lo;
    if span < 12 {
        return (lo..=hi).collect();
    }
    let mut out: Vec<usize> = (0..12).map(|i| lo + i * span / 11).collect();
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
pub fn run_lawofseries_demo(
    params: &LawOfSeriesParams,
    sample_length: usize,
    seed: u64,
    probes: &[usize],
    t_star: f64,
    eps_star: f64,
    min_count: usize,
    grid: GridSpec,
) -> Result<AttractReport> {
    params.validate()?;
    let base = ProcessSpec::new((*params.base).clone(), seed)
        .generate(sample_length)?
        .sequence;
    let (modified, construction) = apply_law_of_series(&base, params, seed)?;
    let opts = SummaryOptions {
        grid: grid.build()?,
        probe: Some(t_star),
    };
    let measure = |seq: &SymbolSequence, n: usize| -> serieslab_core::Result<ProbeMass> {
        let sweep = parallel_sweep(seq, n, min_count, &opts)?;
        Ok(flatness(&sweep, eps_star))
    };
    let probes = probes
        .par_iter()
        .map(|&n| {
            Ok(ProbeRow {
                n,
                before: measure(&base, n)?,
                after: measure(&modified, n)?,
            })
        })
        .collect::<serieslab_core::Result<Vec<_>>>()?;
    Ok(AttractReport {
        params: params.clone(),
        seed,
        sample_length,
        t_star,
        eps_star,
        min_count,
        grid,
        construction,
        probes,
    })
}

fn flatness(sweep: &Sweep, eps: f64) -> ProbeMass {
    let mut flat = 0.0;
    let mut upper = 0.0;
    for r in &sweep.records {
        let g = r.g_at_probe.expect("probe requested");
        if g < eps {
            flat += r.mu_hat;
        }
        if g - r.mu_hat < eps {
            upper += r.mu_hat;
        }
    }
    ProbeMass {
        flat_mass: flat,
        flat_mass_upper: upper,
        resolved_blocks: sweep.records.len(),
        resolved_mass: sweep.resolved_mass(),
        unresolved_mass: sweep.unresolved_mass,
    }
}

impl AttractReport {
    /// Writes `lawofseries.json` and `lawofseries.csv` (one row per probe).
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_json(&dir.join("lawofseries.json"), self)?;
        let rows: Vec<Row> = self
            .probes
            .iter()
            .map(|p| Row {
                seed: self.seed,
                n: p.n,
                flat_mass_before: p.before.flat_mass,
                flat_mass_upper_before: p.before.flat_mass_upper,
                resolved_mass_before: p.before.resolved_mass,
                flat_mass_after: p.after.flat_mass,
                flat_mass_upper_after: p.after.flat_mass_upper,
                resolved_mass_after: p.after.resolved_mass,
                changed_fraction: self.construction.changed_fraction,
            })
            .collect();
        write_csv(&dir.join("lawofseries.csv"), &rows)
    }
}
