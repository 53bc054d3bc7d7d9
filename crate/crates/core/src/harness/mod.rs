//! Everything the CLI needs around the library: the filter file format,
//! dataset ingestion, experiment configs and CSV experiment runners.

pub mod config;
pub mod dataset;
pub mod experiment;
pub mod format;

pub use config::{ExperimentConfig, ExperimentKind};
pub use dataset::{parse_dataset, parse_queries, read_dataset, BadLine, TokenMode};
pub use experiment::{run_experiment, write_calibration, RunSummary};
pub use format::FilterFile;
