//! Compact process-spec strings.
//!
//! ```text
//! fair-coin
//! bernoulli:0.5,0.5
//! markov:0.9,0.1;0.2,0.8        rows separated by ';'
//! markov:@chain.json            {"transition": [[..]], "initial": [..]}
//! periodic:00010111             optional alphabet size: periodic:0121/4
//! example1:N0=4,n=3,r=8
//! lawofseries:@params.json
//! ```

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use serieslab_core::processes::{ExampleOneParams, LawOfSeriesParams, ProcessKind};

pub fn parse_process(text: &str) -> Result<ProcessKind> {
    parse_with_base(text, Path::new("."))
}

/// Like [`parse_process`]; `@file` references resolve against `base`.
pub fn parse_with_base(text: &str, base: &Path) -> Result<ProcessKind> {
    let text = text.trim();
    if text == "fair-coin" {
        return Ok(ProcessKind::Bernoulli {
            probs: vec![0.5, 0.5],
        });
    }
    let (head, body) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("process spec `{text}` lacks a `kind:` prefix"))?;
    let kind = match head {
        "bernoulli" => ProcessKind::Bernoulli {
            probs: parse_floats(body)?,
        },
        "markov" => {
            let chain: ChainFile = match body.strip_prefix('@') {
                Some(file) => read_json(&base.join(file))?,
                None => ChainFile {
                    transition: body.split(';').map(parse_floats).collect::<Result<_>>()?,
                    initial: None,
                },
            };
            ProcessKind::Markov {
                transition: chain.transition,
                initial: chain.initial,
            }
        }
        "periodic" => {
            let (pattern, size) = match body.split_once('/') {
                Some((p, s)) => (p, Some(s.parse::<usize>().context("alphabet size")?)),
                None => (body, None),
            };
            let pattern: Vec<u8> = pattern
                .chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(|d| d as u8)
                        .ok_or_else(|| anyhow!("bad pattern symbol `{c}`"))
                })
                .collect::<Result<_>>()?;
            let widest = pattern.iter().copied().max().unwrap_or(0) as usize + 1;
            ProcessKind::Periodic {
                alphabet_size: size.unwrap_or(widest.max(2)),
                pattern,
            }
        }
        "example1" => {
            let (mut n0, mut n, mut r) = (None, None, None);
            for item in body.split(',') {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| anyhow!("expected key=value, got `{item}`"))?;
                let value: usize = value
                    .trim()
                    .parse()
                    .with_context(|| format!("value of {key}"))?;
                match key.trim() {
                    "N0" => n0 = Some(value),
                    "n" => n = Some(value),
                    "r" => r = Some(value),
                    other => bail!("unknown example1 parameter `{other}`"),
                }
            }
            let missing = |k: &str| anyhow!("example1 needs {k}");
            ProcessKind::ExampleOne(ExampleOneParams::new(
                n0.ok_or_else(|| missing("N0"))?,
                n.ok_or_else(|| missing("n"))?,
                r.ok_or_else(|| missing("r"))?,
            )?)
        }
        "lawofseries" => {
            let file = body
                .strip_prefix('@')
                .ok_or_else(|| anyhow!("lawofseries takes @file.json"))?;
            let params: LawOfSeriesParams = read_json(&base.join(file))?;
            ProcessKind::LawOfSeries(params)
        }
        other => bail!("unknown process kind `{other}`"),
    };
    Ok(kind)
}

/// Transition rows and an optional initial law.
pub type Chain = (Vec<Vec<f64>>, Option<Vec<f64>>);

/// A chain for the oracle: `fair-coin` or any `markov:` spec.
pub fn parse_chain(text: &str) -> Result<Chain> {
    if text.trim() == "fair-coin" {
        return Ok((vec![vec![0.5, 0.5], vec![0.5, 0.5]], None));
    }
    match parse_process(text)? {
        ProcessKind::Markov {
            transition,
            initial,
        } => Ok((transition, initial)),
        ProcessKind::Bernoulli { probs } => Ok((vec![probs.clone(); probs.len()], None)),
        _ => bail!("`{text}` is not a Markov chain"),
    }
}

/// `a..b` (inclusive), `a..=b`, or a comma list.
pub fn parse_lengths(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (usize, usize) = (a.parse()?, b.parse()?);
        if a > b {
            bail!("empty range {text}");
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(Into::into))
        .collect()
}

pub fn parse_floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("bad number `{s}`"))
        })
        .collect()
}

#[derive(Deserialize)]
struct ChainFile {
    transition: Vec<Vec<f64>>,
    #[serde(default)]
    initial: Option<Vec<f64>>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
