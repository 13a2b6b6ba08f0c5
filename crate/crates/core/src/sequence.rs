use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::{Alphabet, Result, Symbol};

/// Where a sequence came from: generator name, a digest of its parameters and
/// the master seed. Equal provenance implies equal data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub digest: String,
    pub seed: u64,
}

/// A finite sample path of a process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSequence {
    alphabet: Alphabet,
    data: Vec<Symbol>,
    provenance: Provenance,
}

impl SymbolSequence {
    pub fn new(alphabet: Alphabet, data: Vec<Symbol>, provenance: Provenance) -> Result<Self> {
        alphabet.check(&data)?;
        Ok(Self {
            alphabet,
            data,
            provenance,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn data(&self) -> &[Symbol] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn into_parts(self) -> (Alphabet, Vec<Symbol>, Provenance) {
        (self.alphabet, self.data, self.provenance)
    }
}
