//! Seeded generators for the process families: i.i.d. (Bernoulli), Markov,
//! periodic, the maximal-entropy concatenation subshift with strong
//! repelling ([`example1`]) and the marker-based modification producing
//! strong attracting ([`law_of_series`]).
//!
//! Every generator is a pure function of its parameters and seed.

mod bernoulli;
pub mod example1;
pub mod law_of_series;
mod markov;
mod periodic;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use bernoulli::gen_bernoulli;
pub use example1::{example1_entropy, gen_example1, DesignatedFamily, ExampleOneParams};
pub use law_of_series::{apply_law_of_series, ConstructionLog, LawOfSeriesParams};
pub(crate) use markov::validate_transition;
pub use markov::{gen_markov, stationary_distribution};
pub use periodic::gen_periodic;

use crate::{Alphabet, Block, Error, Provenance, Result, Symbol, SymbolSequence};

/// Tolerance on probability-vector sums.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// The variant-specific parameters of a process.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ProcessKind {
    Bernoulli {
        probs: Vec<f64>,
    },
    Markov {
        transition: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Vec<f64>>,
    },
    Periodic {
        pattern: Vec<Symbol>,
        alphabet_size: usize,
    },
    ExampleOne(ExampleOneParams),
    LawOfSeries(LawOfSeriesParams),
}

impl ProcessKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProcessKind::Bernoulli { .. } => "bernoulli",
            ProcessKind::Markov { .. } => "markov",
            ProcessKind::Periodic { .. } => "periodic",
            ProcessKind::ExampleOne(_) => "example1",
            ProcessKind::LawOfSeries(_) => "lawofseries",
        }
    }

    pub fn alphabet_size(&self) -> usize {
        match self {
            ProcessKind::Bernoulli { probs } => probs.len(),
            ProcessKind::Markov { transition, .. } => transition.len(),
            ProcessKind::Periodic { alphabet_size, .. } => *alphabet_size,
            ProcessKind::ExampleOne(p) => p.alphabet_size,
            ProcessKind::LawOfSeries(p) => p.base.alphabet_size(),
        }
    }
}

/// A process together with the master seed all of its randomness flows from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    pub seed: u64,
}

/// A generated sample with whatever side information its generator records.
#[derive(Clone, Debug)]
pub struct Generated {
    pub sequence: SymbolSequence,
    pub family: Option<DesignatedFamily>,
    pub construction: Option<ConstructionLog>,
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind, seed: u64) -> Self {
        Self { kind, seed }
    }

    /// Hex digest of the parameters; two specs with equal digest and seed
    /// generate equal sequences of equal length.
    pub fn digest(&self) -> String {
        parameter_digest(&self.kind, None)
    }

    pub fn generate(&self, length: usize) -> Result<Generated> {
        let plain = |sequence| Generated {
            sequence,
            family: None,
            construction: None,
        };
        match &self.kind {
            ProcessKind::Bernoulli { probs } => gen_bernoulli(probs, length, self.seed).map(plain),
            ProcessKind::Markov {
                transition,
                initial,
            } => gen_markov(transition, initial.as_deref(), length, self.seed).map(plain),
            ProcessKind::Periodic {
                pattern,
                alphabet_size,
            } => {
                let block = Block::new(Alphabet::new(*alphabet_size)?, pattern.clone())?;
                gen_periodic(&block, length, self.seed).map(plain)
            }
            ProcessKind::ExampleOne(params) => {
                let (sequence, family) = gen_example1(params, length, self.seed)?;
                Ok(Generated {
                    sequence,
                    family: Some(family),
                    construction: None,
                })
            }
            ProcessKind::LawOfSeries(params) => {
                let base = ProcessSpec::new((*params.base).clone(), self.seed).generate(length)?;
                let (sequence, log) = apply_law_of_series(&base.sequence, params, self.seed)?;
                Ok(Generated {
                    sequence,
                    family: None,
                    construction: Some(log),
                })
            }
        }
    }
}

impl From<LawOfSeriesParams> for ProcessKind {
    fn from(p: LawOfSeriesParams) -> Self {
        ProcessKind::LawOfSeries(p)
    }
}

impl From<ExampleOneParams> for ProcessKind {
    fn from(p: ExampleOneParams) -> Self {
        ProcessKind::ExampleOne(p)
    }
}

pub(crate) fn parameter_digest(kind: &ProcessKind, length: Option<usize>) -> String {
    let canonical = match length {
        Some(len) => format!("{kind:?}|length={len}"),
        None => format!("{kind:?}"),
    };
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn provenance(kind: &ProcessKind, length: usize, seed: u64) -> Provenance {
    Provenance {
        generator: kind.name().into(),
        digest: parameter_digest(kind, Some(length)),
        seed,
    }
}

pub(crate) fn validate_probabilities(probs: &[f64], what: &str) -> Result<()> {
    if probs.len() < 2 {
        return Err(Error::InvalidProbabilities(format!(
            "{what} needs at least 2 entries"
        )));
    }
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0 || *p > 1.0) {
        return Err(Error::InvalidProbabilities(format!(
            "{what} has entries outside [0, 1]"
        )));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::InvalidProbabilities(format!(
            "{what} sums to {sum}, not 1"
        )));
    }
    Ok(())
}

pub(crate) fn check_length(length: usize) -> Result<()> {
    if length == 0 {
        Err(Error::InvalidParameter("length must be at least 1".into()))
    } else {
        Ok(())
    }
}
