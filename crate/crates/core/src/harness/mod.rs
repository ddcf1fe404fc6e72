//! Named suites, run configuration and regression vectors.

pub mod config;
pub mod suites;
pub mod vectors;

pub use config::{ConfigError, OutputFormat, RunConfig, SuiteRegions};
pub use suites::{run_all, run_suite, Discrepancy, RunSummary, SuiteId, SuiteReport, UnknownSuite};
pub use vectors::{
    evaluate, load_vectors, matches_expectation, parse_vectors, replay_vectors, report_value, Provenance,
    ProvenanceTag, VectorError, VectorOp, VectorRecord,
};

/// The corpus built from the documented examples, embedded at compile time.
pub const REFERENCE_VECTORS: &str = include_str!("../../vectors/reference_vectors.jsonl");
