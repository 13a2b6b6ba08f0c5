//! Fully resolved run configurations. A configuration carries every input of
//! a run, so writing it out and running it again reproduces the outputs
//! byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serieslab_core::processes::{ExampleOneParams, LawOfSeriesParams, ProcessKind, ProcessSpec};
use serieslab_core::stats::{
    block_record, hitting_cdf_direct, BlockRecord, DirectHitting, StartPlan,
};
use serieslab_core::Block;

use crate::format::{read_sequence, write_sequence};
use crate::harness::{
    run_example1_check, run_lawofseries_demo, run_oracle_equivalence, run_theorem1_sweep,
    run_unbiased_check, GridSpec,
};
use crate::report::{to_json, write_json};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    Generate {
        process: ProcessKind,
        length: usize,
        seed: u64,
        file: String,
    },
    Analyze {
        input: PathBuf,
        block: String,
        starts: usize,
        seed: u64,
        grid: GridSpec,
    },
    Sweep {
        process: ProcessKind,
        length: usize,
        lengths: Vec<usize>,
        eps: Vec<f64>,
        seed: u64,
        min_count: usize,
        grid: GridSpec,
    },
    Example1 {
        params: ExampleOneParams,
        length: usize,
        seed: u64,
        threshold: f64,
        grid: GridSpec,
    },
    Lawofseries {
        params: LawOfSeriesParams,
        length: usize,
        seed: u64,
        probes: Vec<usize>,
        t_star: f64,
        eps_star: f64,
        min_count: usize,
        grid: GridSpec,
    },
    Unbiased {
        probs: Vec<f64>,
        length: usize,
        lengths: Vec<usize>,
        seed: u64,
        min_count: usize,
        grid: GridSpec,
    },
    OracleCheck {
        transition: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Vec<f64>>,
        blocks: Vec<String>,
        length: usize,
        seed: u64,
        horizon: usize,
    },
}

/// Whether every check built into the command held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    ChecksFailed,
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    input: &'a Path,
    provenance: &'a serieslab_core::Provenance,
    record: BlockRecord,
    direct: DirectHitting,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    /// Runs the command, writing `config.json` and the reports into `out`.
    pub fn run(&self, out: &Path) -> Result<Outcome> {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        write_json(&out.join("config.json"), self)?;
        let mut outcome = Outcome::Passed;
        match self {
            RunConfig::Generate {
                process,
                length,
                seed,
                file,
            } => {
                let generated = ProcessSpec::new(process.clone(), *seed).generate(*length)?;
                write_sequence(&out.join(file), &generated.sequence)?;
                if let Some(family) = generated.family {
                    write_json(&out.join(format!("{file}.family.json")), &family)?;
                }
                if let Some(log) = generated.construction {
                    write_json(&out.join(format!("{file}.construction.json")), &log)?;
                }
            }
            RunConfig::Analyze {
                input,
                block,
                starts,
                seed,
                grid,
            } => {
                let seq = read_sequence(input)?;
                let block = Block::parse(seq.alphabet().clone(), block)?;
                let record = block_record(&seq, &block, &grid.build()?)?;
                let plan = if *starts == 0 {
                    StartPlan::Exhaustive
                } else {
                    StartPlan::Sampled {
                        count: *starts,
                        seed: *seed,
                    }
                };
                let direct = hitting_cdf_direct(&seq, &block, plan)?;
                let report = AnalyzeReport {
                    input,
                    provenance: seq.provenance(),
                    record,
                    direct,
                };
                write_json(&out.join("analyze.json"), &report)?;
            }
            RunConfig::Sweep {
                process,
                length,
                lengths,
                eps,
                seed,
                min_count,
                grid,
            } => {
                run_theorem1_sweep(process, lengths, eps, *length, *seed, *min_count, *grid)?
                    .write(out)?;
            }
            RunConfig::Example1 {
                params,
                length,
                seed,
                threshold,
                grid,
            } => {
                let report = run_example1_check(params, *length, *seed, *threshold, *grid)?;
                report.write(out)?;
                if !report.passed {
                    outcome = Outcome::ChecksFailed;
                }
            }
            RunConfig::Lawofseries {
                params,
                length,
                seed,
                probes,
                t_star,
                eps_star,
                min_count,
                grid,
            } => {
                run_lawofseries_demo(
                    params, *length, *seed, probes, *t_star, *eps_star, *min_count, *grid,
                )?
                .write(out)?;
            }
            RunConfig::Unbiased {
                probs,
                length,
                lengths,
                seed,
                min_count,
                grid,
            } => {
                run_unbiased_check(probs, lengths, *length, *seed, *min_count, *grid)?
                    .write(out)?;
            }
            RunConfig::OracleCheck {
                transition,
                initial,
                blocks,
                length,
                seed,
                horizon,
            } => {
                if blocks.is_empty() {
                    bail!("no blocks given");
                }
                let report = run_oracle_equivalence(
                    transition,
                    initial.as_deref(),
                    blocks,
                    *length,
                    *seed,
                    *horizon,
                )?;
                report.write(out)?;
                if !report.passed {
                    outcome = Outcome::ChecksFailed;
                }
            }
        }
        Ok(outcome)
    }
}
