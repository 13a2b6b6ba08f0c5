use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::processes::{stationary_distribution, validate_probabilities, validate_transition};
use crate::{Error, Result, StepCdf, Symbol};

/// Tail mass beyond the horizon above which the oracle refuses to answer.
pub const ORACLE_TAIL_LIMIT: f64 = 1e-6;

/// A block in a stationary first-order Markov chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovOracleSpec {
    pub transition: Vec<Vec<f64>>,
    /// Stationary vector; computed from `transition` when absent.
    #[serde(default)]
    pub initial: Option<Vec<f64>>,
    pub block: Vec<Symbol>,
    pub horizon: usize,
}

/// Exact law of the return time to a block, truncated at a horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReturnLaw {
    /// Stationary measure of the block.
    pub mu: f64,
    /// `probabilities[i - 1] = P(R = i | block at time 0)`.
    pub probabilities: Vec<f64>,
    /// `P(R > probabilities.len())`.
    pub tail: f64,
}

impl ReturnLaw {
    /// `P(R <= m)`.
    pub fn cdf_at(&self, m: usize) -> f64 {
        self.probabilities
            .iter()
            .take(m)
            .fold(0.0, |a, p| a + p)
            .min(1.0)
    }

    /// Law of `scale * R` as a step function; jumps only where the mass is
    /// positive. The final value is `1 - tail`.
    pub fn scaled_cdf(&self, scale: f64) -> StepCdf {
        let mut jumps = Vec::new();
        let mut values = Vec::new();
        let mut acc = 0.0f64;
        for (i, &prob) in self.probabilities.iter().enumerate() {
            if prob > 0.0 {
                acc = (acc + prob).min(1.0);
                jumps.push(scale * (i + 1) as f64);
                values.push(acc);
            }
        }
        StepCdf::new(jumps, values).expect("cumulative sums of a sub-probability")
    }

    /// Law of `mu * R`.
    pub fn normalized_cdf(&self) -> StepCdf {
        self.scaled_cdf(self.mu)
    }

    /// `sum_i i P(R = i)` over the tabulated range; at most `1 / mu`.
    pub fn truncated_mean(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .fold(0.0, |acc, (i, p)| acc + (i + 1) as f64 * p)
    }
}

/// Exact return-time law with the tail check applied.
pub fn markov_return_oracle(spec: &MarkovOracleSpec) -> Result<ReturnLaw> {
    let law = markov_return_law(spec)?;
    if law.tail >= ORACLE_TAIL_LIMIT {
        return Err(Error::HorizonTooSmall {
            horizon: spec.horizon,
            tail: law.tail,
        });
    }
    Ok(law)
}

/// Exact return-time law up to the horizon, whatever the remaining tail.
///
/// The chain is started from the block's stationary conditional law, which
/// for a first-order chain is concentrated on its last symbol, and run
/// through the string-matching automaton of the block until the automaton
/// reaches the accepting state again. Overlapping recurrences are handled
/// by the automaton's failure links.
pub fn markov_return_law(spec: &MarkovOracleSpec) -> Result<ReturnLaw> {
    validate_transition(&spec.transition)?;
    let a = spec.transition.len();
    let block = &spec.block;
    if block.is_empty() {
        return Err(Error::InvalidParameter("empty block".into()));
    }
    if let Some(&s) = block.iter().find(|&&s| s as usize >= a) {
        return Err(Error::SymbolOutOfRange {
            symbol: s as usize,
            size: a,
        });
    }
    if spec.horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be positive".into()));
    }
    let pi = match &spec.initial {
        Some(v) => {
            validate_probabilities(v, "initial vector")?;
            if v.len() != a {
                return Err(Error::InvalidProbabilities(
                    "length differs from the chain".into(),
                ));
            }
            v.clone()
        }
        None => stationary_distribution(&spec.transition)?,
    };
    let p = &spec.transition;
    let mu = block.windows(2).fold(pi[block[0] as usize], |m, w| {
        m * p[w[0] as usize][w[1] as usize]
    });
    if mu <= 0.0 {
        return Err(Error::InvalidParameter("block has zero measure".into()));
    }

    let n = block.len();
    let delta = automaton(block, a);
    // State (automaton state < n, last symbol), flattened.
    let mut cur = vec![0.0f64; n * a];
    let mut next = vec![0.0f64; n * a];
    let mut probabilities = Vec::with_capacity(spec.horizon.min(1 << 20));
    let last = block[n - 1] as usize;

    // First step leaves the accepting state.
    let mut hit = 0.0;
    for c in 0..a {
        let w = p[last][c];
        if w > 0.0 {
            let s = delta[n][c];
            if s == n {
                hit += w;
            } else {
                cur[s * a + c] += w;
            }
        }
    }
    probabilities.push(hit);
    let mut tail: f64 = cur.iter().fold(0.0, |a, b| a + b);

    while probabilities.len() < spec.horizon && tail > 0.0 {
        next.iter_mut().for_each(|x| *x = 0.0);
        let mut hit = 0.0;
        for s in 0..n {
            for prev in 0..a {
                let mass = cur[s * a + prev];
                if mass == 0.0 {
                    continue;
                }
                for c in 0..a {
                    let w = p[prev][c];
                    if w > 0.0 {
                        let s2 = delta[s][c];
                        if s2 == n {
                            hit += mass * w;
                        } else {
                            next[s2 * a + c] += mass * w;
                        }
                    }
                }
            }
        }
        probabilities.push(hit);
        core::mem::swap(&mut cur, &mut next);
        tail = cur.iter().fold(0.0, |a, b| a + b);
    }
    Ok(ReturnLaw {
        mu,
        probabilities,
        tail,
    })
}

/// Transition table of the string-matching automaton, `(n + 1) x a`.
fn automaton(block: &[Symbol], a: usize) -> Vec<Vec<usize>> {
    let n = block.len();
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut k = border[i - 1];
        while k > 0 && block[i] != block[k] {
            k = border[k - 1];
        }
        if block[i] == block[k] {
            k += 1;
        }
        border[i] = k;
    }
    let mut delta: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for state in 0..=n {
        let row = (0..a)
            .map(|c| {
                if state < n && block[state] as usize == c {
                    state + 1
                } else if state == 0 {
                    0
                } else {
                    delta[border[state - 1]][c]
                }
            })
            .collect();
        delta.push(row);
    }
    delta
}
