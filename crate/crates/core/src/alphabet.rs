//! Finite symbol alphabets and the textual form of words over them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A symbol index in `[0, alphabet.size())`.
pub type Symbol = u8;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// A finite alphabet of between 2 and 256 symbols, optionally labelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Alphabet {
    /// Symbols are stored as bytes.
    pub const MAX_SIZE: usize = 256;

    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidAlphabet(format!("size {size} < 2")));
        }
        if size > Self::MAX_SIZE {
            return Err(Error::InvalidAlphabet(format!(
                "size {size} exceeds {}",
                Self::MAX_SIZE
            )));
        }
        Ok(Self { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut alphabet = Self::new(labels.len())?;
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::InvalidAlphabet(format!("duplicate label {label:?}")));
            }
        }
        alphabet.labels = Some(labels);
        Ok(alphabet)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        (symbol as usize) < self.size
    }

    pub fn check(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| !self.contains(s)) {
            Some(&s) => Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                size: self.size,
            }),
            None => Ok(()),
        }
    }

    fn single_char_labels(&self) -> Option<Vec<char>> {
        let labels = self.labels.as_ref()?;
        labels
            .iter()
            .map(|l| {
                let mut chars = l.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Some(c),
                    _ => None,
                }
            })
            .collect()
    }

    /// Renders a word: single-character labels if present, base-36 digits for
    /// alphabets of at most 36 symbols, dot-separated indices otherwise.
    pub fn format_word(&self, word: &[Symbol]) -> String {
        if let Some(chars) = self.single_char_labels() {
            return word.iter().map(|&s| chars[s as usize]).collect();
        }
        if self.size <= DIGITS.len() {
            return word.iter().map(|&s| DIGITS[s as usize] as char).collect();
        }
        let parts: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        parts.join(".")
    }

    /// Inverse of [`Alphabet::format_word`].
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>> {
        let bad = || Error::InvalidParameter(format!("cannot parse word {text:?}"));
        let word: Vec<Symbol> = if let Some(chars) = self.single_char_labels() {
            text.chars()
                .map(|c| chars.iter().position(|&l| l == c).map(|i| i as Symbol))
                .collect::<Option<_>>()
                .ok_or_else(bad)?
        } else if self.size <= DIGITS.len() {
            text.chars()
                .map(|c| c.to_digit(36).map(|d| d as Symbol))
                .collect::<Option<_>>()
                .ok_or_else(bad)?
        } else {
            text.split('.')
                .map(|p| p.parse::<u8>().ok())
                .collect::<Option<_>>()
                .ok_or_else(bad)?
        };
        if word.is_empty() {
            return Err(bad());
        }
        self.check(&word)?;
        Ok(word)
    }
}
