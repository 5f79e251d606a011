//! Experiment harness: configuration, batteries, experiments, reports.

pub mod battery;
pub mod config;
pub mod experiments;
pub mod plot;
pub mod report;

pub use config::{ExperimentId, HarnessConfig};
pub use experiments::{run_experiment, Expectation};
pub use report::{ExperimentReport, SeriesTrace, Verdict};

/// Configure the global worker pool. A no-op without the `parallel` feature.
pub fn configure_threads(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        if t > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
