use std::path::Path;

use anyhow::{anyhow, Result};
use serde::{Deserialize, Serialize};
use serieslab_core::processes::{example1_entropy, gen_example1, ExampleOneParams};
use serieslab_core::stats::{BlockSummary, SummaryOptions};

use super::{parallel_sweep, GridSpec};
use crate::report::{write_csv, write_json};

/// Measurements of the designated family of an Example 1 sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Example1Report {
    pub params: ExampleOneParams,
    pub sample_length: usize,
    pub seed: u64,
    pub per_block_measure: f64,
    pub expected_mass: f64,
    pub designated_blocks: usize,
    pub designated_found: usize,
    pub designated_mass: f64,
    /// `3 sqrt(mass / L)`.
    pub mass_tolerance: f64,
    /// Smallest and largest gap times `mu_hat`, over all designated blocks.
    pub min_gap_ratio: f64,
    pub max_gap_ratio: f64,
    /// `[1 - 1/r, 1 + 1/r]`.
    pub gap_window: [f64; 2],
    pub threshold: f64,
    pub repel_fraction: f64,
    pub entropy_bits: f64,
    pub mass_ok: bool,
    pub gaps_ok: bool,
    pub repel_ok: bool,
    pub passed: bool,
    #[serde(skip)]
    pub blocks: Vec<BlockSummary>,
}

/// Fraction of designated blocks that must reach the repelling threshold.
pub const REPEL_FRACTION: f64 = 0.9;

#[derive(Serialize)]
struct Row<'a> {
    seed: u64,
    block: &'a str,
    count: usize,
    mu_hat: f64,
    min_gap_ratio: f64,
    max_gap_ratio: f64,
    eps_repel: f64,
    t_repel: f64,
}

pub fn run_example1_check(
    params: &ExampleOneParams,
    sample_length: usize,
    seed: u64,
    threshold: f64,
    grid: GridSpec,
) -> Result<Example1Report> {
    let (seq, family) = gen_example1(params, sample_length, seed)?;
    let opts = SummaryOptions {
        grid: grid.build()?,
        probe: None,
    };
    let sweep = parallel_sweep(&seq, params.block_len, 2, &opts)?;
    let blocks: Vec<BlockSummary> = sweep
        .records
        .into_iter()
        .filter(|r| family.contains(&r.word))
        .collect();
    if blocks.is_empty() {
        return Err(anyhow!(
            "no designated block occurs twice; sample too short"
        ));
    }
    let mass: f64 = blocks.iter().map(|b| b.mu_hat).sum();
    let expected_mass = family.joint_measure;
    let mass_tolerance = 3.0 * (mass / sample_length as f64).sqrt();
    let min_gap = blocks
        .iter()
        .map(|b| b.min_normalized_gap)
        .fold(f64::INFINITY, f64::min);
    let max_gap = blocks
        .iter()
        .map(|b| b.max_normalized_gap)
        .fold(f64::NEG_INFINITY, f64::max);
    let inv_r = 1.0 / params.markers as f64;
    let gap_window = [1.0 - inv_r, 1.0 + inv_r];
    let repel_fraction = blocks.iter().filter(|b| b.eps_repel >= threshold).count() as f64
        / family.blocks.len() as f64;
    let mass_ok = (mass - expected_mass).abs() <= mass_tolerance;
    let gaps_ok = min_gap >= gap_window[0] && max_gap <= gap_window[1];
    let repel_ok = repel_fraction >= REPEL_FRACTION;
    Ok(Example1Report {
        params: params.clone(),
        sample_length,
        seed,
        per_block_measure: family.per_block_measure,
        expected_mass,
        designated_blocks: family.blocks.len(),
        designated_found: blocks.len(),
        designated_mass: mass,
        mass_tolerance,
        min_gap_ratio: min_gap,
        max_gap_ratio: max_gap,
        gap_window,
        threshold,
        repel_fraction,
        entropy_bits: example1_entropy(params.core_symbols(), params.block_len)?,
        mass_ok,
        gaps_ok,
        repel_ok,
        passed: mass_ok && gaps_ok && repel_ok,
        blocks,
    })
}

impl Example1Report {
    /// Writes `example1.json` and `example1.csv` (one row per designated
    /// block).
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_json(&dir.join("example1.json"), self)?;
        let rows: Vec<Row> = self
            .blocks
            .iter()
            .map(|b| Row {
                seed: self.seed,
                block: &b.block,
                count: b.count,
                mu_hat: b.mu_hat,
                min_gap_ratio: b.min_normalized_gap,
                max_gap_ratio: b.max_normalized_gap,
                eps_repel: b.eps_repel,
                t_repel: b.t_repel,
            })
            .collect();
        write_csv(&dir.join("example1.csv"), &rows)
    }
}
