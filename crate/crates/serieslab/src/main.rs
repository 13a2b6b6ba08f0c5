use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use serieslab::config::{Outcome, RunConfig, DEFAULT_SEED};
use serieslab::grammar::{parse_chain, parse_floats, parse_lengths, parse_process};
use serieslab::harness::{default_probes, GridSpec};
use serieslab_core::processes::{ExampleOneParams, ProcessKind};
use serieslab_core::stats::DEFAULT_MIN_COUNT;

/// Return- and hitting-time statistics of symbolic processes.
#[derive(Parser)]
#[command(name = "serieslab", version)]
struct Cli {
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true, env = "SERIESLAB_THREADS")]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Re-run a previously written config.json; other flags are ignored.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 0.01)]
    grid_low: f64,
    #[arg(long, default_value_t = 10.0)]
    grid_high: f64,
    #[arg(long, default_value_t = 256)]
    grid_points: usize,
}

impl GridArgs {
    fn spec(&self) -> GridSpec {
        GridSpec {
            low: self.grid_low,
            high: self.grid_high,
            points: self.grid_points,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sample and write it as a sequence file.
    Generate {
        #[arg(long)]
        process: String,
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// File name inside the output directory.
        #[arg(long, default_value = "seq.bin")]
        file: String,
    },
    /// Analyze one block of a sequence file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        block: String,
        /// Random starts for the direct hitting estimate; 0 uses every position.
        #[arg(long, default_value_t = 10_000)]
        starts: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Repelling/attracting prevalence per block length.
    Sweep {
        #[arg(long)]
        process: String,
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        /// Block lengths: `a..b`, or a comma list.
        #[arg(long = "n", default_value = "1..8")]
        lengths: String,
        #[arg(long, default_value = "0.1")]
        eps: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
        min_count: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Designated-family checks on a marker-cycle sample.
    Example1 {
        #[arg(long, default_value_t = 4)]
        n0: usize,
        #[arg(long = "n", default_value_t = 3)]
        block_len: usize,
        #[arg(long, default_value_t = 8)]
        r: usize,
        #[arg(long, default_value_t = 10_000_000)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Repelling threshold; defaults to 1/e - 0.1.
        #[arg(long)]
        threshold: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Hitting-time flatness before and after the series construction.
    Lawofseries {
        /// `lawofseries:@params.json`, or a bare path to the JSON file.
        #[arg(long)]
        params: String,
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Probed block lengths; defaults to up to 12 lengths in [N, N^2].
        #[arg(long)]
        probes: Option<String>,
        #[arg(long, default_value_t = 2.0)]
        t_star: f64,
        #[arg(long, default_value_t = 0.1)]
        eps_star: f64,
        #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
        min_count: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Distance to the exponential law for an i.i.d. process.
    Unbiased {
        #[arg(long, default_value = "0.5,0.5")]
        probs: String,
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        #[arg(long = "n", default_value = "1..8")]
        lengths: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
        min_count: usize,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Compare empirical return laws with the exact Markov ones.
    OracleCheck {
        /// `fair-coin` or a `markov:` spec.
        #[arg(long, default_value = "fair-coin")]
        chain: String,
        /// Blocks; comma separated or repeated.
        #[arg(long = "block", required = true, value_delimiter = ',')]
        blocks: Vec<String>,
        #[arg(long, default_value_t = 1_000_000)]
        length: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
}

fn resolve(command: Command) -> Result<RunConfig> {
    let seed = |s: Option<u64>| s.unwrap_or(DEFAULT_SEED);
    Ok(match command {
        Command::Generate {
            process,
            length,
            seed: s,
            file,
        } => RunConfig::Generate {
            process: parse_process(&process)?,
            length,
            seed: seed(s),
            file,
        },
        Command::Analyze {
            input,
            block,
            starts,
            seed: s,
            grid,
        } => RunConfig::Analyze {
            input,
            block,
            starts,
            seed: seed(s),
            grid: grid.spec(),
        },
        Command::Sweep {
            process,
            length,
            lengths,
            eps,
            seed: s,
            min_count,
            grid,
        } => RunConfig::Sweep {
            process: parse_process(&process)?,
            length,
            lengths: parse_lengths(&lengths)?,
            eps: parse_floats(&eps)?,
            seed: seed(s),
            min_count,
            grid: grid.spec(),
        },
        Command::Example1 {
            n0,
            block_len,
            r,
            length,
            seed: s,
            threshold,
            grid,
        } => RunConfig::Example1 {
            params: ExampleOneParams::new(n0, block_len, r)?,
            length,
            seed: seed(s),
            threshold: threshold.unwrap_or((-1.0f64).exp() - 0.1),
            grid: grid.spec(),
        },
        Command::Lawofseries {
            params,
            length,
            seed: s,
            probes,
            t_star,
            eps_star,
            min_count,
            grid,
        } => {
            let spec = if params.starts_with("lawofseries:") {
                params
            } else {
                format!("lawofseries:@{params}")
            };
            let ProcessKind::LawOfSeries(params) = parse_process(&spec)? else {
                bail!("expected law-of-series parameters");
            };
            let probes = match probes {
                Some(text) => parse_lengths(&text)?,
                None => default_probes(params.window),
            };
            RunConfig::Lawofseries {
                params,
                length,
                seed: seed(s),
                probes,
                t_star,
                eps_star,
                min_count,
                grid: grid.spec(),
            }
        }
        Command::Unbiased {
            probs,
            length,
            lengths,
            seed: s,
            min_count,
            grid,
        } => RunConfig::Unbiased {
            probs: parse_floats(&probs)?,
            length,
            lengths: parse_lengths(&lengths)?,
            seed: seed(s),
            min_count,
            grid: grid.spec(),
        },
        Command::OracleCheck {
            chain,
            blocks,
            length,
            seed: s,
            horizon,
        } => {
            let (transition, initial) = parse_chain(&chain)?;
            RunConfig::OracleCheck {
                transition,
                initial,
                blocks,
                length,
                seed: seed(s),
                horizon,
            }
        }
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let config = match (&cli.config, cli.command) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, Some(command)) => resolve(command)?,
        (None, None) => return Err(anyhow!("no command given; see --help")),
    };
    print!("{}", config.to_json()?);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = cli.threads {
        pool = pool.num_threads(threads);
    }
    let pool = pool.build()?;
    let out = cli.out;
    pool.install(|| config.run(&out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => {
            eprintln!("checks failed; see the report");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
