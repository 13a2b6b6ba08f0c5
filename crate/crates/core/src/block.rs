use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

use crate::{Alphabet, Error, Result, Symbol};

/// A word of length `n >= 1`, identified with its cylinder set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    alphabet: Alphabet,
    word: Vec<Symbol>,
}

impl Block {
    pub fn new(alphabet: Alphabet, word: Vec<Symbol>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidParameter("empty block".into()));
        }
        alphabet.check(&word)?;
        Ok(Self { alphabet, word })
    }

    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let word = alphabet.parse_word(text)?;
        Ok(Self { alphabet, word })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_word(&self.word))
    }
}
