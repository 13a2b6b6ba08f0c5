//! Marker-based modification of a sample that makes blocks cluster into
//! series.
//!
//! 1. Pick `k` words `w_1 .. w_k` of length `l`, all starting and ending with
//!    one anchor symbol `a`, each occurring in the base sample with an
//!    occurrence that no other chosen word comes within `l` positions of.
//! 2. Cut the sample into components of length `r` or `r + 1` (fair coin per
//!    component) at a random phase.
//! 3. Split every component into `k` sub-blocks of length `p`; the last one
//!    absorbs the remainder.
//! 4. Inside the `i`-th sub-block and the first `N^2` positions of the next
//!    one, replace every occurrence of `w_i` by `b^l`, scanning left to right
//!    and resuming after each replacement.
//!
//! Since every `w_i` starts and ends with `a != b`, writing `b^l` never
//! creates a new occurrence of any `w_j`: afterwards `w_i` is absent from
//! every sub-block of class `i`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ProcessKind;
use crate::rng::stream;
use crate::{Error, Provenance, Result, Symbol, SymbolSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawOfSeriesParams {
    /// The process being modified.
    pub base: Box<ProcessKind>,
    /// Number of special words `k`.
    pub word_count: usize,
    /// Word length `l`.
    pub word_len: usize,
    /// Component length `r`; must equal `k * p`.
    pub component_len: usize,
    /// Sub-block length `p`.
    pub sub_block_len: usize,
    /// Window parameter `N`; replacements extend `N^2 <= p` positions into
    /// the following sub-block.
    pub window: usize,
    /// Anchor symbol `a`; searched over all symbols when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Symbol>,
    /// Filler symbol `b`; the smallest symbol other than `a` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filler: Option<Symbol>,
    /// Upper bound on a word's empirical measure; `0.1 / (l k)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_word_measure: Option<f64>,
    /// Length of the prefix searched for words; the whole sample when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_len: Option<usize>,
}

impl LawOfSeriesParams {
    pub fn spill(&self) -> usize {
        self.window.saturating_mul(self.window)
    }

    pub fn word_measure_cap(&self) -> f64 {
        self.max_word_measure
            .unwrap_or(0.1 / (self.word_len as f64 * self.word_count as f64))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.word_count == 0 {
            return bad("k must be at least 1".into());
        }
        if self.word_len == 0 {
            return bad("l must be at least 1".into());
        }
        if self.component_len != self.word_count * self.sub_block_len {
            return bad(format!(
                "r = {} differs from k * p = {}",
                self.component_len,
                self.word_count * self.sub_block_len
            ));
        }
        if self.word_len >= self.sub_block_len {
            return bad("l must be smaller than p".into());
        }
        if self.window == 0 || self.spill() > self.sub_block_len {
            return bad("need 1 <= N and N^2 <= p".into());
        }
        if let (Some(a), Some(b)) = (self.anchor, self.filler) {
            if a == b {
                return Err(Error::AlphabetTooSmall("filler equals anchor".into()));
            }
        }
        Ok(())
    }
}

/// What the construction did.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionLog {
    pub anchor: Symbol,
    pub filler: Symbol,
    pub words: Vec<Vec<Symbol>>,
    pub word_text: Vec<String>,
    /// Distance from the start of the sample back to the first component.
    pub grid_offset: usize,
    pub sub_block_len: usize,
    pub spill: usize,
    /// Start and length of every component; may start before position 0.
    #[serde(skip)]
    pub components: Vec<(i64, usize)>,
    pub component_count: usize,
    pub replacements: usize,
    pub changed_symbols: usize,
    pub changed_fraction: f64,
    /// `replacements * l / length`, an upper bound for `changed_fraction`.
    pub replaced_fraction_bound: f64,
}

impl ConstructionLog {
    /// `(class, start, end)` of every sub-block, clipped to `[0, len)`.
    pub fn sub_blocks(&self, len: usize) -> Vec<(usize, usize, usize)> {
        let k = self.words.len();
        let p = self.sub_block_len as i64;
        let mut out = Vec::new();
        for &(start, comp_len) in &self.components {
            for class in 0..k {
                let s = start + class as i64 * p;
                let e = if class + 1 == k {
                    start + comp_len as i64
                } else {
                    s + p
                };
                let (s, e) = (s.max(0), e.min(len as i64));
                if s < e {
                    out.push((class, s as usize, e as usize));
                }
            }
        }
        out
    }
}

fn occurrences(data: &[Symbol], len: usize, anchor: Symbol) -> BTreeMap<&[Symbol], Vec<usize>> {
    let mut map: BTreeMap<&[Symbol], Vec<usize>> = BTreeMap::new();
    for (i, w) in data.windows(len).enumerate() {
        if w[0] == anchor && w[len - 1] == anchor {
            map.entry(w).or_default().push(i);
        }
    }
    map
}

/// Whether some occurrence of `word` has no occurrence of another word of
/// `set` starting within `l` positions of it.
fn isolated(word: &[usize], others: &[&[usize]], l: usize) -> bool {
    word.iter().any(|&x| {
        others.iter().all(|pos| {
            let i = pos.partition_point(|&y| y + l < x);
            i == pos.len() || pos[i] > x + l
        })
    })
}

fn select_words(
    data: &[Symbol],
    alphabet_size: usize,
    params: &LawOfSeriesParams,
) -> Result<(Symbol, Vec<Vec<Symbol>>)> {
    let l = params.word_len;
    let search = &data[..params.search_len.unwrap_or(data.len()).min(data.len())];
    if search.len() < l {
        return Err(Error::WordsNotFound("search prefix shorter than l".into()));
    }
    let windows = (search.len() - l + 1) as f64;
    let cap = params.word_measure_cap();
    let anchors: Vec<Symbol> = match params.anchor {
        Some(a) => alloc::vec![a],
        None => (0..alphabet_size).map(|a| a as Symbol).collect(),
    };
    for anchor in anchors {
        let map = occurrences(search, l, anchor);
        let mut candidates: Vec<(&[Symbol], &Vec<usize>)> = map
            .iter()
            .filter(|(_, pos)| pos.len() as f64 / windows <= cap)
            .map(|(w, pos)| (*w, pos))
            .collect();
        // Most frequent admissible words first; ties lexicographic.
        candidates.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));
        let mut chosen: Vec<(&[Symbol], &Vec<usize>)> = Vec::new();
        for cand in candidates {
            let mut trial = chosen.clone();
            trial.push(cand);
            let ok = (0..trial.len()).all(|i| {
                let others: Vec<&[usize]> = trial
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, c)| c.1.as_slice())
                    .collect();
                isolated(trial[i].1, &others, l)
            });
            if ok {
                chosen = trial;
                if chosen.len() == params.word_count {
                    return Ok((anchor, chosen.iter().map(|c| c.0.to_vec()).collect()));
                }
            }
        }
    }
    Err(Error::WordsNotFound(format!(
        "fewer than {} admissible words of length {l}",
        params.word_count
    )))
}

/// Replaces occurrences of `word` starting in `[from, to)`; returns the count.
fn replace_in_zone(
    data: &mut [Symbol],
    word: &[Symbol],
    filler: Symbol,
    from: usize,
    to: usize,
) -> usize {
    let l = word.len();
    let mut count = 0;
    let mut x = from;
    while x < to && x + l <= data.len() {
        if &data[x..x + l] == word {
            data[x..x + l].fill(filler);
            count += 1;
            x += l;
        } else {
            x += 1;
        }
    }
    count
}

/// Applies the construction to `base`; the marker grid is drawn from `seed`.
pub fn apply_law_of_series(
    base: &SymbolSequence,
    params: &LawOfSeriesParams,
    seed: u64,
) -> Result<(SymbolSequence, ConstructionLog)> {
    params.validate()?;
    let size = base.alphabet().size();
    if let Some(a) = params.anchor {
        base.alphabet().check(&[a])?;
    }
    let (anchor, words) = select_words(base.data(), size, params)?;
    let filler = match params.filler {
        Some(b) => {
            base.alphabet().check(&[b])?;
            if b == anchor {
                return Err(Error::AlphabetTooSmall("filler equals anchor".into()));
            }
            b
        }
        None => (0..size as Symbol)
            .find(|&b| b != anchor)
            .ok_or_else(|| Error::AlphabetTooSmall("no symbol besides the anchor".into()))?,
    };

    let len = base.len() as i64;
    let k = params.word_count;
    let p = params.sub_block_len as i64;
    let spill = params.spill() as i64;
    let mut rng = stream(seed, "law_of_series.grid");
    let grid_offset = rng.gen_range(0..params.component_len);
    let mut data = base.data().to_vec();
    let mut components = Vec::new();
    let mut replacements = 0;
    let mut start = -(grid_offset as i64);
    while start < len {
        let comp_len = params.component_len + rng.gen::<bool>() as usize;
        components.push((start, comp_len));
        for (class, word) in words.iter().enumerate() {
            let s = start + class as i64 * p;
            let e = if class + 1 == k {
                start + comp_len as i64
            } else {
                s + p
            };
            let from = s.clamp(0, len) as usize;
            let to = (e + spill).clamp(0, len) as usize;
            replacements += replace_in_zone(&mut data, word, filler, from, to);
        }
        start += comp_len as i64;
    }

    let changed_symbols = data.iter().zip(base.data()).filter(|(a, b)| a != b).count();
    let n = base.len().max(1) as f64;
    let log = ConstructionLog {
        anchor,
        filler,
        word_text: words
            .iter()
            .map(|w| base.alphabet().format_word(w))
            .collect(),
        words,
        grid_offset,
        sub_block_len: params.sub_block_len,
        spill: params.spill(),
        component_count: components.len(),
        components,
        replacements,
        changed_symbols,
        changed_fraction: changed_symbols as f64 / n,
        replaced_fraction_bound: (replacements * params.word_len) as f64 / n,
    };
    let provenance = Provenance {
        generator: format!("{}+lawofseries", base.provenance().generator),
        digest: super::parameter_digest(
            &ProcessKind::LawOfSeries(params.clone()),
            Some(base.len()),
        ),
        seed,
    };
    let sequence = SymbolSequence::new(base.alphabet().clone(), data, provenance)?;
    Ok((sequence, log))
}
