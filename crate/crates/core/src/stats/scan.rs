use alloc::vec::Vec;

use crate::{Block, Error, Result, SymbolSequence};

/// All start positions of a block in a sequence, overlaps included.
#[derive(Clone, Debug, PartialEq)]
pub struct OccurrenceList {
    block: Block,
    positions: Vec<usize>,
    /// Number of length-`n` windows, `L - n + 1`.
    windows: usize,
}

impl OccurrenceList {
    pub fn new(block: Block, positions: Vec<usize>, windows: usize) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "positions must be strictly increasing".into(),
            ));
        }
        if positions.last().is_some_and(|&p| p >= windows) {
            return Err(Error::InvalidParameter(
                "position outside the scan window".into(),
            ));
        }
        Ok(Self {
            block,
            positions,
            windows,
        })
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn count(&self) -> usize {
        self.positions.len()
    }

    pub fn windows(&self) -> usize {
        self.windows
    }

    /// `count / (L - n + 1)`.
    pub fn mu_hat(&self) -> f64 {
        self.positions.len() as f64 / self.windows as f64
    }
}

pub fn scan_occurrences(seq: &SymbolSequence, block: &Block) -> Result<OccurrenceList> {
    if block.alphabet().size() != seq.alphabet().size() {
        return Err(Error::AlphabetMismatch {
            block: block.alphabet().size(),
            sequence: seq.alphabet().size(),
        });
    }
    let n = block.len();
    if n > seq.len() {
        return Err(Error::BlockTooLong {
            block: n,
            sequence: seq.len(),
        });
    }
    let word = block.word();
    let positions = seq
        .data()
        .windows(n)
        .enumerate()
        .filter(|(_, w)| *w == word)
        .map(|(i, _)| i)
        .collect();
    Ok(OccurrenceList {
        block: block.clone(),
        positions,
        windows: seq.len() - n + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Alphabet, Provenance};
    use alloc::vec;

    fn seq(text: &str) -> SymbolSequence {
        let alphabet = Alphabet::with_labels(vec!["a".into(), "b".into()]).unwrap();
        let data = alphabet.parse_word(text).unwrap();
        let prov = Provenance {
            generator: "text".into(),
            digest: "".into(),
            seed: 0,
        };
        SymbolSequence::new(alphabet, data, prov).unwrap()
    }

    fn block(s: &SymbolSequence, text: &str) -> Block {
        Block::parse(s.alphabet().clone(), text).unwrap()
    }

    #[test]
    fn finds_occurrences() {
        let s = seq("abab");
        assert_eq!(
            scan_occurrences(&s, &block(&s, "ab")).unwrap().positions(),
            &[0, 2]
        );
        assert!(scan_occurrences(&s, &block(&s, "bb"))
            .unwrap()
            .positions()
            .is_empty());
    }

    #[test]
    fn counts_overlaps() {
        let s = seq("aaaa");
        let occ = scan_occurrences(&s, &block(&s, "aa")).unwrap();
        assert_eq!(occ.positions(), &[0, 1, 2]);
        assert_eq!(occ.windows(), 3);
        assert_eq!(occ.mu_hat(), 1.0);
    }

    #[test]
    fn rejects_wrong_alphabet_and_long_blocks() {
        let s = seq("abab");
        let ternary = Block::parse(Alphabet::new(3).unwrap(), "01").unwrap();
        assert!(matches!(
            scan_occurrences(&s, &ternary),
            Err(Error::AlphabetMismatch { .. })
        ));
        assert!(matches!(
            scan_occurrences(&s, &block(&s, "ababa")),
            Err(Error::BlockTooLong { .. })
        ));
    }
}
