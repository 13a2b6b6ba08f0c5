use std::path::Path;

use anyhow::{anyhow, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serieslab_core::analytic::{markov_return_oracle, MarkovOracleSpec};
use serieslab_core::processes::{ProcessKind, ProcessSpec};
use serieslab_core::stats::{return_gaps, scan_occurrences};
use serieslab_core::Block;

use crate::report::{write_csv, write_json};

/// Confidence level of the sampling bound: the deviation of an empirical
/// distribution function from the truth exceeds the bound with probability
/// at most this much.
pub const DKW_ALPHA: f64 = 1e-6;

/// Empirical return-time laws against the exact ones of a Markov chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub process: ProcessSpec,
    pub sample_length: usize,
    pub horizon: usize,
    pub alpha: f64,
    pub rows: Vec<OracleRow>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub block: String,
    pub count: usize,
    pub mu: f64,
    pub mu_hat: f64,
    /// Sup-distance between the empirical and exact laws of the return
    /// time, compared at every integer time.
    pub sup_deviation: f64,
    /// `sqrt(ln(2 / alpha) / (2 gaps)) + tail`.
    pub bound: f64,
    pub tail: f64,
    pub passed: bool,
}

#[derive(Serialize)]
struct Row<'a> {
    seed: u64,
    block: &'a str,
    count: usize,
    mu: f64,
    mu_hat: f64,
    sup_deviation: f64,
    bound: f64,
    passed: bool,
}

/// Return gaps are compared on the absolute time axis: both laws are
/// supported on the integers, and the sup over integer points equals the sup
/// over all `t`. Dividing both by the same constant leaves the distance
/// unchanged, so this is also the distance between the normalized laws when
/// a common normalization is used.
pub fn run_oracle_equivalence(
    transition: &[Vec<f64>],
    initial: Option<&[f64]>,
    blocks: &[String],
    sample_length: usize,
    seed: u64,
    horizon: usize,
) -> Result<OracleReport> {
    let process = ProcessSpec::new(
        ProcessKind::Markov {
            transition: transition.to_vec(),
            initial: initial.map(<[f64]>::to_vec),
        },
        seed,
    );
    let seq = process.generate(sample_length)?.sequence;
    let rows = blocks
        .par_iter()
        .map(|text| -> Result<OracleRow> {
            let block = Block::parse(seq.alphabet().clone(), text)?;
            let law = markov_return_oracle(&MarkovOracleSpec {
                transition: transition.to_vec(),
                initial: initial.map(<[f64]>::to_vec),
                block: block.word().to_vec(),
                horizon,
            })?;
            let occ = scan_occurrences(&seq, &block)?;
            let gaps = return_gaps(&occ).map_err(|e| anyhow!("block {text}: {e}"))?;
            let max_gap = *gaps.iter().max().unwrap() as usize;
            let mut hist = vec![0u64; max_gap + 1];
            for &g in &gaps {
                hist[g as usize] += 1;
            }
            let total = gaps.len() as f64;
            let mut emp = 0u64;
            let mut exact = 0.0f64;
            let mut sup = 0.0f64;
            for m in 1..=max_gap.max(law.probabilities.len()) {
                emp += hist.get(m).copied().unwrap_or(0);
                exact += law.probabilities.get(m - 1).copied().unwrap_or(0.0);
                sup = sup.max((emp as f64 / total - exact.min(1.0)).abs());
            }
            let bound = ((2.0 / DKW_ALPHA).ln() / (2.0 * total)).sqrt() + law.tail;
            Ok(OracleRow {
                block: text.clone(),
                count: occ.count(),
                mu: law.mu,
                mu_hat: occ.mu_hat(),
                sup_deviation: sup,
                bound,
                tail: law.tail,
                passed: sup <= bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.passed);
    Ok(OracleReport {
        process,
        sample_length,
        horizon,
        alpha: DKW_ALPHA,
        rows,
        passed,
    })
}

impl OracleReport {
    /// Writes `oracle.json` and `oracle.csv`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_json(&dir.join("oracle.json"), self)?;
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                seed: self.process.seed,
                block: &r.block,
                count: r.count,
                mu: r.mu,
                mu_hat: r.mu_hat,
                sup_deviation: r.sup_deviation,
                bound: r.bound,
                passed: r.passed,
            })
            .collect();
        write_csv(&dir.join("oracle.csv"), &rows)
    }
}
