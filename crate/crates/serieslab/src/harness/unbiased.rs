use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serieslab_core::processes::{ProcessKind, ProcessSpec};
use serieslab_core::stats::SummaryOptions;

use super::{median, parallel_sweep, GridSpec};
use crate::report::{write_csv, write_json};

/// Distance of hitting laws from the exponential law, per block length, for
/// an i.i.d. process.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnbiasedReport {
    pub process: ProcessSpec,
    pub sample_length: usize,
    pub min_count: usize,
    pub grid: GridSpec,
    pub rows: Vec<UnbiasedRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnbiasedRow {
    pub n: usize,
    pub resolved_blocks: usize,
    pub resolved_mass: f64,
    pub median_ks: Option<f64>,
    pub max_ks: Option<f64>,
}

#[derive(Serialize)]
struct Row {
    seed: u64,
    n: usize,
    resolved_blocks: usize,
    resolved_mass: f64,
    median_ks: Option<f64>,
    max_ks: Option<f64>,
}

pub fn run_unbiased_check(
    probs: &[f64],
    lengths: &[usize],
    sample_length: usize,
    seed: u64,
    min_count: usize,
    grid: GridSpec,
) -> Result<UnbiasedReport> {
    let process = ProcessSpec::new(
        ProcessKind::Bernoulli {
            probs: probs.to_vec(),
        },
        seed,
    );
    let seq = process.generate(sample_length)?.sequence;
    let opts = SummaryOptions {
        grid: grid.build()?,
        probe: None,
    };
    let rows = lengths
        .par_iter()
        .map(|&n| {
            let sweep = parallel_sweep(&seq, n, min_count, &opts)?;
            let mut ks: Vec<f64> = sweep.records.iter().map(|r| r.ks_exp).collect();
            Ok(UnbiasedRow {
                n,
                resolved_blocks: sweep.records.len(),
                resolved_mass: sweep.resolved_mass(),
                max_ks: ks.iter().copied().reduce(f64::max),
                median_ks: median(&mut ks),
            })
        })
        .collect::<serieslab_core::Result<Vec<_>>>()?;
    Ok(UnbiasedReport {
        process,
        sample_length,
        min_count,
        grid,
        rows,
    })
}

impl UnbiasedReport {
    /// Writes `unbiased.json` and `unbiased.csv`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_json(&dir.join("unbiased.json"), self)?;
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                seed: self.process.seed,
                n: r.n,
                resolved_blocks: r.resolved_blocks,
                resolved_mass: r.resolved_mass,
                median_ks: r.median_ks,
                max_ks: r.max_ks,
            })
            .collect();
        write_csv(&dir.join("unbiased.csv"), &rows)
    }
}
