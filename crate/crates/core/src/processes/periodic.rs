use alloc::vec::Vec;

use super::{check_length, provenance, ProcessKind};
use crate::{Block, Result, SymbolSequence};

/// Periodic repetition of `pattern`, starting at phase `phase_seed % period`.
pub fn gen_periodic(pattern: &Block, length: usize, phase_seed: u64) -> Result<SymbolSequence> {
    check_length(length)?;
    let word = pattern.word();
    let period = word.len();
    let phase = (phase_seed % period as u64) as usize;
    let data: Vec<u8> = (0..length).map(|i| word[(i + phase) % period]).collect();
    let kind = ProcessKind::Periodic {
        pattern: word.to_vec(),
        alphabet_size: pattern.alphabet().size(),
    };
    SymbolSequence::new(
        pattern.alphabet().clone(),
        data,
        provenance(&kind, length, phase_seed),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Alphabet;

    fn block(text: &str) -> Block {
        Block::parse(Alphabet::new(2).unwrap(), text).unwrap()
    }

    #[test]
    fn phases() {
        assert_eq!(
            gen_periodic(&block("01"), 6, 0).unwrap().data(),
            &[0, 1, 0, 1, 0, 1]
        );
        assert_eq!(
            gen_periodic(&block("01"), 6, 1).unwrap().data(),
            &[1, 0, 1, 0, 1, 0]
        );
    }

    #[test]
    fn pattern_recurs_at_its_period() {
        let pattern = block("0010111");
        let seq = gen_periodic(&pattern, 200, 3).unwrap();
        let starts: Vec<usize> = seq
            .data()
            .windows(7)
            .enumerate()
            .filter(|(_, w)| *w == pattern.word())
            .map(|(i, _)| i)
            .collect();
        assert!(starts.len() > 2);
        assert!(starts.windows(2).all(|w| w[1] - w[0] == 7));
    }
}
