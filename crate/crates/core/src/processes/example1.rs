//! A concatenation subshift whose designated `n`-blocks repel with nearly the
//! maximal intensity while the entropy stays close to `log2(N0)`.
//!
//! The alphabet is split into `N0` core symbols `0..N0` and `r` marker
//! symbols `N0..N0 + r`. For marker class `i`, the family `B_i` holds the
//! `N0^(n-1)` blocks made of `n - 1` core symbols followed by marker `i`. A
//! component of class `i` is a concatenation of all blocks of `B_i`, each used
//! exactly once, in uniformly random order; components cycle through the
//! classes `1, 2, .., r, 1, ..`. Independent uniform permutations per
//! component give the measure of maximal entropy on this free concatenation
//! system; a uniform random phase approximates stationarity.

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{check_length, provenance, ProcessKind};
use crate::rng::stream;
use crate::{Alphabet, Error, Result, Symbol, SymbolSequence};

/// Largest family size `N0^(n-1)` materialized by the generator.
pub const MAX_FAMILY_SIZE: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleOneParams {
    /// Total alphabet size `N = N0 + r`.
    pub alphabet_size: usize,
    /// Number of marker symbols `r`.
    pub markers: usize,
    /// Designated block length `n`.
    pub block_len: usize,
}

impl ExampleOneParams {
    pub fn new(core_symbols: usize, block_len: usize, markers: usize) -> Result<Self> {
        let params = Self {
            alphabet_size: core_symbols + markers,
            markers,
            block_len,
        };
        params.validate()?;
        Ok(params)
    }

    /// `N0`, the number of core symbols.
    pub fn core_symbols(&self) -> usize {
        self.alphabet_size.saturating_sub(self.markers)
    }

    /// `N0^(n-1)`, saturating.
    pub fn family_size(&self) -> usize {
        let mut m: usize = 1;
        for _ in 1..self.block_len {
            m = m.saturating_mul(self.core_symbols());
        }
        m
    }

    /// Length `n * N0^(n-1)` of one component.
    pub fn component_len(&self) -> usize {
        self.block_len.saturating_mul(self.family_size())
    }

    /// `1 / (n r N0^(n-1))`.
    pub fn per_block_measure(&self) -> f64 {
        1.0 / (self.block_len as f64 * self.markers as f64 * self.family_size() as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.markers < 2 {
            return Err(Error::InvalidParameter("need at least 2 markers".into()));
        }
        if self.core_symbols() < 2 {
            return Err(Error::InvalidParameter(
                "need at least 2 core symbols".into(),
            ));
        }
        if self.block_len < 2 {
            return Err(Error::InvalidParameter(
                "block length must be at least 2".into(),
            ));
        }
        if self.alphabet_size > Alphabet::MAX_SIZE {
            return Err(Error::InvalidParameter(
                "alphabet exceeds 256 symbols".into(),
            ));
        }
        if self.family_size() > MAX_FAMILY_SIZE {
            return Err(Error::TooLarge(alloc::format!(
                "N0^(n-1) = {} exceeds {MAX_FAMILY_SIZE}",
                self.family_size()
            )));
        }
        Ok(())
    }

    pub fn is_marker(&self, symbol: Symbol) -> bool {
        (symbol as usize) >= self.core_symbols() && (symbol as usize) < self.alphabet_size
    }
}

/// The union of the families `B_1 .. B_r` with their theoretical measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignatedFamily {
    pub params: ExampleOneParams,
    /// Every designated block, in lexicographic order.
    pub blocks: Vec<Vec<Symbol>>,
    pub per_block_measure: f64,
    /// `r N0^(n-1)` blocks of measure `1/(n r N0^(n-1))`, i.e. `1/n`.
    pub joint_measure: f64,
}

impl DesignatedFamily {
    fn new(params: &ExampleOneParams) -> Self {
        let n0 = params.core_symbols();
        let mut blocks = Vec::with_capacity(params.family_size() * params.markers);
        for prefix in 0..params.family_size() {
            let digits = core_digits(prefix, n0, params.block_len - 1);
            for marker in 0..params.markers {
                let mut word = digits.clone();
                word.push((n0 + marker) as Symbol);
                blocks.push(word);
            }
        }
        blocks.sort();
        let per_block_measure = params.per_block_measure();
        Self {
            params: params.clone(),
            joint_measure: per_block_measure * blocks.len() as f64,
            blocks,
            per_block_measure,
        }
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        let n = self.params.block_len;
        word.len() == n
            && self.params.is_marker(word[n - 1])
            && word[..n - 1]
                .iter()
                .all(|&s| (s as usize) < self.params.core_symbols())
    }
}

/// Base-`n0` digits of `index`, most significant first.
fn core_digits(mut index: usize, n0: usize, len: usize) -> Vec<Symbol> {
    let mut digits = alloc::vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = (index % n0) as Symbol;
        index /= n0;
    }
    digits
}

/// A stationary-phase sample of the Example 1 subshift.
pub fn gen_example1(
    params: &ExampleOneParams,
    length: usize,
    seed: u64,
) -> Result<(SymbolSequence, DesignatedFamily)> {
    params.validate()?;
    check_length(length)?;
    let n0 = params.core_symbols();
    let m = params.family_size();
    let prefix_len = params.block_len - 1;
    let table: Vec<Vec<Symbol>> = (0..m).map(|i| core_digits(i, n0, prefix_len)).collect();

    let mut rng = stream(seed, "example1");
    let mut class = rng.gen_range(0..params.markers);
    let skip = rng.gen_range(0..params.component_len());
    let mut order: Vec<usize> = (0..m).collect();
    let mut data = Vec::with_capacity(length + skip + params.component_len());
    while data.len() < skip + length {
        order.shuffle(&mut rng);
        let marker = (n0 + class) as Symbol;
        for &i in &order {
            data.extend_from_slice(&table[i]);
            data.push(marker);
        }
        class = (class + 1) % params.markers;
    }
    data.drain(..skip);
    data.truncate(length);

    let alphabet = Alphabet::new(params.alphabet_size)?;
    let kind = ProcessKind::ExampleOne(params.clone());
    let sequence = SymbolSequence::new(alphabet, data, provenance(&kind, length, seed))?;
    Ok((sequence, DesignatedFamily::new(params)))
}

/// Entropy in bits per symbol, `log2((N0^(n-1))!) / (n N0^(n-1))`, via
/// log-gamma.
pub fn example1_entropy(core_symbols: usize, block_len: usize) -> Result<f64> {
    if core_symbols == 0 || block_len == 0 {
        return Err(Error::InvalidParameter("N0 and n must be positive".into()));
    }
    let m = libm::pow(core_symbols as f64, (block_len - 1) as f64);
    if !m.is_finite() {
        return Err(Error::TooLarge("N0^(n-1) overflows".into()));
    }
    let log2_factorial = libm::lgamma(m + 1.0) / core::f64::consts::LN_2;
    Ok(log2_factorial / (block_len as f64 * m))
}
