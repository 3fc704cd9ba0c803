//! Shared inputs for the benchmark suite.

use headroom_core::{SynthSpec, WeeklyTraceSet};

/// A reproducible year for benchmarking.
pub fn bench_traces() -> WeeklyTraceSet {
    headroom_core::ingest::synth::synthesize_year(&SynthSpec::default(), 1729).expect("valid spec")
}
