use std::path::Path;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serieslab_core::processes::{ProcessKind, ProcessSpec};
use serieslab_core::stats::{BlockSummary, SummaryOptions};

use super::{median, parallel_sweep, GridSpec};
use crate::report::{write_csv, write_json};

/// Prevalence of repelling and attracting blocks, per block length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub process: ProcessSpec,
    pub digest: String,
    pub sample_length: usize,
    pub min_count: usize,
    pub grid: GridSpec,
    pub eps: Vec<f64>,
    pub rows: Vec<SweepRow>,
    #[serde(skip)]
    pub blocks: Vec<(usize, Vec<BlockSummary>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub resolved_blocks: usize,
    pub unresolved_blocks: usize,
    pub resolved_mass: f64,
    pub unresolved_mass: f64,
    /// `weighted_repel_measure(eps[j])`.
    pub repel_measure: Vec<f64>,
    pub attract_measure: Vec<f64>,
    pub median_eps_repel: Option<f64>,
    pub median_ks: Option<f64>,
}

#[derive(Serialize)]
struct TrendCsv {
    seed: u64,
    n: usize,
    eps: f64,
    repel_measure: f64,
    attract_measure: f64,
    resolved_blocks: usize,
    resolved_mass: f64,
    unresolved_mass: f64,
    median_eps_repel: Option<f64>,
    median_ks: Option<f64>,
}

#[derive(Serialize)]
struct BlockCsv<'a> {
    seed: u64,
    n: usize,
    block: &'a str,
    count: usize,
    mu_hat: f64,
    eps_repel: f64,
    t_repel: f64,
    eps_attract: f64,
    t_attract: f64,
    ks_exp: f64,
}

pub fn run_theorem1_sweep(
    kind: &ProcessKind,
    lengths: &[usize],
    eps: &[f64],
    sample_length: usize,
    seed: u64,
    min_count: usize,
    grid: GridSpec,
) -> Result<SweepReport> {
    let process = ProcessSpec::new(kind.clone(), seed);
    let seq = process.generate(sample_length)?.sequence;
    let opts = SummaryOptions {
        grid: grid.build()?,
        probe: None,
    };
    let sweeps = lengths
        .par_iter()
        .map(|&n| parallel_sweep(&seq, n, min_count, &opts))
        .collect::<serieslab_core::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    for sweep in sweeps {
        let mut repel: Vec<f64> = sweep.records.iter().map(|r| r.eps_repel).collect();
        let mut ks: Vec<f64> = sweep.records.iter().map(|r| r.ks_exp).collect();
        rows.push(SweepRow {
            n: sweep.n,
            resolved_blocks: sweep.records.len(),
            unresolved_blocks: sweep.unresolved_blocks,
            resolved_mass: sweep.resolved_mass(),
            unresolved_mass: sweep.unresolved_mass,
            repel_measure: eps
                .iter()
                .map(|&e| sweep.weighted_repel_measure(e))
                .collect(),
            attract_measure: eps
                .iter()
                .map(|&e| sweep.weighted_attract_measure(e))
                .collect(),
            median_eps_repel: median(&mut repel),
            median_ks: median(&mut ks),
        });
        blocks.push((sweep.n, sweep.records));
    }
    Ok(SweepReport {
        digest: process.digest(),
        process,
        sample_length,
        min_count,
        grid,
        eps: eps.to_vec(),
        rows,
        blocks,
    })
}

impl SweepReport {
    /// Writes `sweep.json`, `sweep.csv` (one row per length and threshold)
    /// and `blocks.csv` (one row per resolved block).
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_json(&dir.join("sweep.json"), self)?;
        let seed = self.process.seed;
        let trend: Vec<TrendCsv> = self
            .rows
            .iter()
            .flat_map(|row| {
                self.eps.iter().enumerate().map(move |(j, &eps)| TrendCsv {
                    seed,
                    n: row.n,
                    eps,
                    repel_measure: row.repel_measure[j],
                    attract_measure: row.attract_measure[j],
                    resolved_blocks: row.resolved_blocks,
                    resolved_mass: row.resolved_mass,
                    unresolved_mass: row.unresolved_mass,
                    median_eps_repel: row.median_eps_repel,
                    median_ks: row.median_ks,
                })
            })
            .collect();
        write_csv(&dir.join("sweep.csv"), &trend)?;
        let blocks: Vec<BlockCsv> = self
            .blocks
            .iter()
            .flat_map(|(n, recs)| {
                recs.iter().map(move |r| BlockCsv {
                    seed,
                    n: *n,
                    block: &r.block,
                    count: r.count,
                    mu_hat: r.mu_hat,
                    eps_repel: r.eps_repel,
                    t_repel: r.t_repel,
                    eps_attract: r.eps_attract,
                    t_attract: r.t_attract,
                    ks_exp: r.ks_exp,
                })
            })
            .collect();
        write_csv(&dir.join("blocks.csv"), &blocks)
    }
}
