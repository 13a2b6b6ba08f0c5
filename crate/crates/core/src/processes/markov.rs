use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use rand::distributions::{Distribution, WeightedIndex};

use super::{check_length, provenance, validate_probabilities, ProcessKind};
use crate::rng::stream;
use crate::{Alphabet, Error, Result, Symbol, SymbolSequence};

pub(crate) fn validate_transition(transition: &[Vec<f64>]) -> Result<()> {
    let size = transition.len();
    if size < 2 {
        return Err(Error::NonStochastic("need at least 2 states".into()));
    }
    for (i, row) in transition.iter().enumerate() {
        if row.len() != size {
            return Err(Error::NonStochastic(format!(
                "row {i} has {} entries",
                row.len()
            )));
        }
        validate_probabilities(row, "transition row")
            .map_err(|e| Error::NonStochastic(format!("row {i}: {e}")))?;
    }
    Ok(())
}

/// The unique stationary vector of a row-stochastic matrix, by Gaussian
/// elimination on `pi (P - I) = 0, sum(pi) = 1`.
pub fn stationary_distribution(transition: &[Vec<f64>]) -> Result<Vec<f64>> {
    validate_transition(transition)?;
    let n = transition.len();
    // Rows of the system: (P^T - I) with the last equation replaced by sum = 1.
    let mut a = vec![vec![0.0; n + 1]; n];
    for (i, row) in a.iter_mut().enumerate().take(n - 1) {
        for (j, cell) in row.iter_mut().enumerate().take(n) {
            *cell = transition[j][i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for cell in a[n - 1].iter_mut() {
        *cell = 1.0;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap_or(col);
        if a[pivot][col].abs() < 1e-12 {
            return Err(Error::NoUniqueStationary);
        }
        a.swap(col, pivot);
        let head = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col {
                let factor = row[col] / head[col];
                if factor != 0.0 {
                    for (cell, h) in row.iter_mut().zip(&head).skip(col) {
                        *cell -= factor * h;
                    }
                }
            }
        }
    }
    let mut pi: Vec<f64> = (0..n).map(|i| (a[i][n] / a[i][i]).max(0.0)).collect();
    let total: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|p| *p /= total);
    Ok(pi)
}

/// A Markov sample path. With `initial = None` the chain starts from its
/// stationary vector, making the path stationary.
pub fn gen_markov(
    transition: &[Vec<f64>],
    initial: Option<&[f64]>,
    length: usize,
    seed: u64,
) -> Result<SymbolSequence> {
    validate_transition(transition)?;
    check_length(length)?;
    let start = match initial {
        Some(v) => {
            if v.len() != transition.len() {
                return Err(Error::InvalidProbabilities(
                    "initial vector size differs from the matrix".into(),
                ));
            }
            validate_probabilities(v, "initial vector")?;
            v.to_vec()
        }
        None => stationary_distribution(transition)?,
    };
    let alphabet = Alphabet::new(transition.len())?;
    let weighted =
        |w: &[f64]| WeightedIndex::new(w).map_err(|e| Error::InvalidProbabilities(format!("{e}")));
    let rows = transition
        .iter()
        .map(|r| weighted(r))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream(seed, "markov");
    let mut data = Vec::with_capacity(length);
    let mut state = weighted(&start)?.sample(&mut rng);
    data.push(state as Symbol);
    for _ in 1..length {
        state = rows[state].sample(&mut rng);
        data.push(state as Symbol);
    }
    let kind = ProcessKind::Markov {
        transition: transition.to_vec(),
        initial: initial.map(<[f64]>::to_vec),
    };
    SymbolSequence::new(alphabet, data, provenance(&kind, length, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::gen_bernoulli;

    fn sticky() -> Vec<Vec<f64>> {
        vec![vec![0.9, 0.1], vec![0.1, 0.9]]
    }

    #[test]
    fn identity_chain_is_absorbing() {
        let identity = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let seq = gen_markov(&identity, Some(&[1.0, 0.0]), 4, 1).unwrap();
        assert_eq!(seq.data(), &[0, 0, 0, 0]);
        assert_eq!(
            stationary_distribution(&identity),
            Err(Error::NoUniqueStationary)
        );
    }

    #[test]
    fn stationary_vector_of_asymmetric_chain() {
        // pi_0 = p10 / (p01 + p10)
        let chain = vec![vec![0.7, 0.3], vec![0.1, 0.9]];
        let pi = stationary_distribution(&chain).unwrap();
        assert!((pi[0] - 0.25).abs() < 1e-12);
        assert!((pi[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn sticky_chain_frequencies() {
        // Stationary (1/2, 1/2); the frequency has asymptotic variance
        // 0.25 * (1 + 0.8) / (1 - 0.8) / L, so sd ~ 1.5e-3 at L = 10^6.
        let seq = gen_markov(&sticky(), None, 1_000_000, 9).unwrap();
        let zeros = seq.data().iter().filter(|&&s| s == 0).count() as f64 / 1e6;
        assert!((zeros - 0.5).abs() < 0.01, "{zeros}");
    }

    #[test]
    fn empirical_transitions_converge() {
        let chain = vec![
            vec![0.5, 0.3, 0.2],
            vec![0.2, 0.5, 0.3],
            vec![0.3, 0.2, 0.5],
        ];
        let seq = gen_markov(&chain, None, 300_000, 4).unwrap();
        let mut counts = [[0usize; 3]; 3];
        for w in seq.data().windows(2) {
            counts[w[0] as usize][w[1] as usize] += 1;
        }
        for (i, row) in counts.iter().enumerate() {
            let total: usize = row.iter().sum();
            for (j, &c) in row.iter().enumerate() {
                let freq = c as f64 / total as f64;
                let slack = 3.0 / libm::sqrt(total as f64);
                assert!((freq - chain[i][j]).abs() < slack, "{i}->{j}: {freq}");
            }
        }
    }

    #[test]
    fn product_chain_matches_fair_coin_statistics() {
        let half = vec![vec![0.5, 0.5], vec![0.5, 0.5]];
        let chain = gen_markov(&half, None, 200_000, 2).unwrap();
        let coin = gen_bernoulli(&[0.5, 0.5], 200_000, 2).unwrap();
        let runs = |d: &[u8]| d.windows(2).filter(|w| w[0] == w[1]).count() as f64 / d.len() as f64;
        assert!((runs(chain.data()) - runs(coin.data())).abs() < 0.01);
    }

    #[test]
    fn rejects_non_stochastic() {
        let bad = vec![vec![0.5, 0.4], vec![0.5, 0.5]];
        assert!(matches!(
            gen_markov(&bad, None, 10, 0),
            Err(Error::NonStochastic(_))
        ));
        let ragged = vec![vec![1.0], vec![0.5, 0.5]];
        assert!(gen_markov(&ragged, None, 10, 0).is_err());
    }
}
