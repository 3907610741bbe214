//! Profile and score generators, and PrefLib ingestion.

mod mallows;
mod preflib;
mod synthetic;

pub use mallows::{sample_mallows, MallowsConfig};
pub use preflib::{parse_preflib, write_preflib, ParsedProfile};
pub use synthetic::{gen_synthetic_scores, ScoreDistribution};

/// Committee size used for real-data runs: `min(10, x / 2)`.
pub fn real_data_committee(x: usize) -> usize {
    10.min(x / 2)
}
