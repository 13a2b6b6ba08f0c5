//! End-to-end experiments. Each one generates its sample from a seed,
//! measures it and returns a report that serializes identically on every
//! run, whatever the number of worker threads.

mod example1;
mod law_of_series;
mod oracle;
mod theorem1;
mod unbiased;

pub use example1::{run_example1_check, Example1Report};
pub use law_of_series::{default_probes, run_lawofseries_demo, AttractReport, ProbeMass, ProbeRow};
pub use oracle::{run_oracle_equivalence, OracleReport, OracleRow, DKW_ALPHA};
pub use theorem1::{run_theorem1_sweep, SweepReport, SweepRow};
pub use unbiased::{run_unbiased_check, UnbiasedReport, UnbiasedRow};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serieslab_core::stats::{BlockSummary, SummaryOptions, Sweep, SweepPlan};
use serieslab_core::{EvalGrid, SymbolSequence};

/// Parameters of a geometric evaluation grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub low: f64,
    pub high: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            low: 0.01,
            high: 10.0,
            points: 256,
        }
    }
}

impl GridSpec {
    pub fn build(&self) -> serieslab_core::Result<EvalGrid> {
        EvalGrid::geometric(self.low, self.high, self.points)
    }
}

/// [`serieslab_core::stats::block_sweep`] with the per-block work spread over
/// the current rayon pool. Output order is the lexicographic block order.
pub fn parallel_sweep(
    seq: &SymbolSequence,
    n: usize,
    min_count: usize,
    opts: &SummaryOptions,
) -> serieslab_core::Result<Sweep> {
    let plan = SweepPlan::new(seq, n, min_count)?;
    let records = plan
        .resolved()
        .par_iter()
        .map(|entry| plan.summarize(seq, entry, opts))
        .collect::<serieslab_core::Result<Vec<BlockSummary>>>()?;
    Ok(plan.finish(records))
}

pub(crate) fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    })
}
