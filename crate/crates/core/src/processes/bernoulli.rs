use alloc::vec::Vec;
use rand::distributions::{Distribution, WeightedIndex};

use super::{check_length, provenance, validate_probabilities, ProcessKind};
use crate::rng::stream;
use crate::{Alphabet, Error, Result, Symbol, SymbolSequence};

/// I.i.d. draws from `probs`.
pub fn gen_bernoulli(probs: &[f64], length: usize, seed: u64) -> Result<SymbolSequence> {
    validate_probabilities(probs, "probability vector")?;
    check_length(length)?;
    let alphabet = Alphabet::new(probs.len())?;
    let dist = WeightedIndex::new(probs)
        .map_err(|e| Error::InvalidProbabilities(alloc::format!("{e}")))?;
    let mut rng = stream(seed, "bernoulli");
    let data: Vec<Symbol> = (0..length)
        .map(|_| dist.sample(&mut rng) as Symbol)
        .collect();
    let kind = ProcessKind::Bernoulli {
        probs: probs.to_vec(),
    };
    SymbolSequence::new(alphabet, data, provenance(&kind, length, seed))
}
