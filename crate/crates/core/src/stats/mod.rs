//! Occurrence scanning and empirical estimation of return-time and
//! hitting-time laws, the repelling/attracting intensities and per-length
//! block sweeps.

mod hitting;
mod intensity;
mod returns;
mod scan;
mod sweep;

pub use hitting::{
    block_record, hitting_cdf_direct, hitting_cdf_via_g, hitting_from_occurrences, BlockRecord,
    DirectHitting, GCurve, HittingViaG, StartPlan,
};
pub use intensity::{intensities, ks_to_exponential, Intensities};
pub use returns::{kth_return_samples, mean_normalized_gap, return_cdf, return_gaps};
pub use scan::{scan_occurrences, OccurrenceList};
pub use sweep::{block_sweep, BlockSummary, SummaryOptions, Sweep, SweepPlan, DEFAULT_MIN_COUNT};
