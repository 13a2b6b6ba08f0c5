use alloc::string::String;
use alloc::vec::Vec;
use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use super::hitting_cdf_via_g;
use crate::cdf::{ecdf_from_sorted, SurvivalIntegral};
use crate::{Error, EvalGrid, Result, Symbol, SymbolSequence};

/// Blocks seen fewer times than this carry too few return gaps for a
/// meaningful empirical law.
pub const DEFAULT_MIN_COUNT: usize = 50;

/// Per-block output of a sweep. Keeps scalars only so that a sweep over a
/// long sequence stays small.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub block: String,
    pub word: Vec<Symbol>,
    pub count: usize,
    pub mu_hat: f64,
    pub eps_repel: f64,
    pub t_repel: f64,
    pub eps_attract: f64,
    pub t_attract: f64,
    pub ks_exp: f64,
    pub mean_normalized_gap: f64,
    pub min_normalized_gap: f64,
    pub max_normalized_gap: f64,
    /// `G(t)` at the probe time of [`SummaryOptions`], if one was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_at_probe: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SummaryOptions {
    pub grid: EvalGrid,
    pub probe: Option<f64>,
}

/// The occurrence table of every length-`n` block, split by a minimum count.
/// Summaries of the resolved blocks are independent and may be computed in
/// any order or in parallel before [`SweepPlan::finish`].
#[derive(Clone, Debug)]
pub struct SweepPlan {
    n: usize,
    windows: usize,
    min_count: usize,
    resolved: Vec<(Vec<Symbol>, Vec<u32>)>,
    unresolved_blocks: usize,
    unresolved_occurrences: usize,
}

impl SweepPlan {
    pub fn new(seq: &SymbolSequence, n: usize, min_count: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "block length must be positive".into(),
            ));
        }
        if n > seq.len() {
            return Err(Error::BlockTooLong {
                block: n,
                sequence: seq.len(),
            });
        }
        if seq.len() > u32::MAX as usize {
            return Err(Error::TooLarge("sequences beyond 2^32 symbols".into()));
        }
        let min_count = min_count.max(2);
        let table = occurrence_table(seq.data(), n, seq.alphabet().size());
        let mut resolved = Vec::new();
        let mut unresolved_blocks = 0;
        let mut unresolved_occurrences = 0;
        for (word, positions) in table {
            if positions.len() >= min_count {
                resolved.push((word, positions));
            } else {
                unresolved_blocks += 1;
                unresolved_occurrences += positions.len();
            }
        }
        Ok(Self {
            n,
            windows: seq.len() - n + 1,
            min_count,
            resolved,
            unresolved_blocks,
            unresolved_occurrences,
        })
    }

    /// Resolved blocks in lexicographic order with their sorted positions.
    pub fn resolved(&self) -> &[(Vec<Symbol>, Vec<u32>)] {
        &self.resolved
    }

    pub fn summarize(
        &self,
        seq: &SymbolSequence,
        entry: &(Vec<Symbol>, Vec<u32>),
        opts: &SummaryOptions,
    ) -> Result<BlockSummary> {
        let (word, positions) = entry;
        let count = positions.len();
        let mu_hat = count as f64 / self.windows as f64;
        let mut gaps: Vec<u32> = positions.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.sort_unstable();
        let normalized: Vec<f64> = gaps.iter().map(|&g| mu_hat * g as f64).collect();
        let ret = ecdf_from_sorted(&normalized);
        let hitting = hitting_cdf_via_g(&ret, mu_hat, &opts.grid)?;
        let eps = hitting.g_curve.intensities();
        let span = (positions[count - 1] - positions[0]) as f64;
        let g_at_probe = opts
            .probe
            .map(|t| SurvivalIntegral::new(&ret).at(t).min(1.0));
        Ok(BlockSummary {
            block: seq.alphabet().format_word(word),
            word: word.clone(),
            count,
            mu_hat,
            eps_repel: eps.eps_repel,
            t_repel: eps.t_repel,
            eps_attract: eps.eps_attract,
            t_attract: eps.t_attract,
            ks_exp: eps.ks(),
            mean_normalized_gap: mu_hat * span / (count - 1) as f64,
            min_normalized_gap: normalized[0],
            max_normalized_gap: normalized[normalized.len() - 1],
            g_at_probe,
        })
    }

    /// Assembles the sweep; `records` must follow the order of
    /// [`SweepPlan::resolved`].
    pub fn finish(self, records: Vec<BlockSummary>) -> Sweep {
        Sweep {
            n: self.n,
            windows: self.windows,
            min_count: self.min_count,
            records,
            unresolved_blocks: self.unresolved_blocks,
            unresolved_mass: self.unresolved_occurrences as f64 / self.windows as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub n: usize,
    pub windows: usize,
    pub min_count: usize,
    pub records: Vec<BlockSummary>,
    /// Blocks that occur but fewer than `min_count` times.
    pub unresolved_blocks: usize,
    pub unresolved_mass: f64,
}

impl Sweep {
    pub fn resolved_mass(&self) -> f64 {
        self.records.iter().fold(0.0, |acc, r| acc + r.mu_hat)
    }

    /// `resolved_mass + unresolved_mass`; equals 1 up to rounding.
    pub fn total_mass(&self) -> f64 {
        self.resolved_mass() + self.unresolved_mass
    }

    /// Empirical measure of the resolved blocks with `eps_repel >= eps`.
    pub fn weighted_repel_measure(&self, eps: f64) -> f64 {
        self.records
            .iter()
            .filter(|r| r.eps_repel >= eps)
            .fold(0.0, |acc, r| acc + r.mu_hat)
    }

    pub fn weighted_attract_measure(&self, eps: f64) -> f64 {
        self.records
            .iter()
            .filter(|r| r.eps_attract >= eps)
            .fold(0.0, |acc, r| acc + r.mu_hat)
    }
}

/// Serial sweep over all length-`n` blocks seen at least `min_count` times.
pub fn block_sweep(
    seq: &SymbolSequence,
    n: usize,
    min_count: usize,
    grid: &EvalGrid,
) -> Result<Sweep> {
    let plan = SweepPlan::new(seq, n, min_count)?;
    let opts = SummaryOptions {
        grid: grid.clone(),
        probe: None,
    };
    let records = plan
        .resolved()
        .iter()
        .map(|e| plan.summarize(seq, e, &opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(plan.finish(records))
}

/// Every block of length `n` with its sorted start positions, in
/// lexicographic order.
fn occurrence_table(data: &[Symbol], n: usize, size: usize) -> Vec<(Vec<Symbol>, Vec<u32>)> {
    let a = size as u64;
    let fits = (1..n).try_fold(a, |acc, _| acc.checked_mul(a)).is_some();
    if fits {
        let lead = a.pow(n as u32 - 1);
        let mut table: HashMap<u64, Vec<u32>> = HashMap::new();
        let mut code = data[..n].iter().fold(0u64, |c, &s| c * a + s as u64);
        table.entry(code).or_default().push(0);
        for i in 1..=data.len() - n {
            code = (code - data[i - 1] as u64 * lead) * a + data[i + n - 1] as u64;
            table.entry(code).or_default().push(i as u32);
        }
        let mut entries: Vec<(u64, Vec<u32>)> = table.into_iter().collect();
        entries.sort_unstable_by_key(|e| e.0);
        entries
            .into_iter()
            .map(|(_, pos)| {
                let p = pos[0] as usize;
                (data[p..p + n].to_vec(), pos)
            })
            .collect()
    } else {
        let mut table: HashMap<&[Symbol], Vec<u32>> = HashMap::new();
        for (i, w) in data.windows(n).enumerate() {
            table.entry(w).or_default().push(i as u32);
        }
        let mut entries: Vec<(&[Symbol], Vec<u32>)> = table.into_iter().collect();
        entries.sort_unstable_by(|x, y| x.0.cmp(y.0));
        entries
            .into_iter()
            .map(|(w, pos)| (w.to_vec(), pos))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Alphabet, Provenance};
    use alloc::vec;

    fn seq(size: usize, data: Vec<u8>) -> SymbolSequence {
        let prov = Provenance {
            generator: "test".into(),
            digest: "".into(),
            seed: 0,
        };
        SymbolSequence::new(Alphabet::new(size).unwrap(), data, prov).unwrap()
    }

    #[test]
    fn table_matches_naive_scan() {
        let data: Vec<u8> = (0..500u32).map(|i| ((i * 7 + i / 3) % 3) as u8).collect();
        for n in [1, 2, 5] {
            let table = occurrence_table(&data, n, 3);
            let mut naive: Vec<(Vec<u8>, Vec<u32>)> = Vec::new();
            for (i, w) in data.windows(n).enumerate() {
                match naive.iter_mut().find(|e| e.0 == w) {
                    Some(e) => e.1.push(i as u32),
                    None => naive.push((w.to_vec(), vec![i as u32])),
                }
            }
            naive.sort();
            assert_eq!(table, naive);
        }
    }

    #[test]
    fn wide_words_use_slice_keys() {
        let data: Vec<u8> = (0..300u32).map(|i| ((i * 31 + 7) % 200) as u8).collect();
        let table = occurrence_table(&data, 10, 200);
        let total: usize = table.iter().map(|e| e.1.len()).sum();
        assert_eq!(total, 291);
        assert!(table.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn mass_is_conserved() {
        let data: Vec<u8> = (0..2000u32)
            .map(|i| ((i * i + 3 * i) % 5 % 2) as u8)
            .collect();
        let s = seq(2, data);
        for n in 1..6 {
            let sweep = block_sweep(&s, n, 30, &EvalGrid::default()).unwrap();
            assert!((sweep.total_mass() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_blocks_repel() {
        let data: Vec<u8> = (0..4000).map(|i| [0, 0, 0, 1, 0, 1, 1, 1][i % 8]).collect();
        let s = seq(2, data);
        let sweep = block_sweep(&s, 3, 30, &EvalGrid::default()).unwrap();
        assert_eq!(sweep.records.len(), 8);
        for r in &sweep.records {
            assert!((r.eps_repel - (-1.0f64).exp()).abs() < 1e-3, "{}", r.block);
        }
    }

    #[test]
    fn rejects_bad_lengths() {
        let s = seq(2, vec![0, 1, 0]);
        assert!(block_sweep(&s, 0, 2, &EvalGrid::default()).is_err());
        assert!(block_sweep(&s, 4, 2, &EvalGrid::default()).is_err());
    }
}
