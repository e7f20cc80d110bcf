//! Redundancy analysis for model-evaluation benchmarks.
//!
//! Given per-instance model results, the crate measures how much a
//! benchmark's dimensions, instances, and sibling benchmarks overlap by
//! correlating the model rankings they induce:
//!
//! - [`dimension`]: pairwise dimension correlations, ρ(X_i) and ρ_BI.
//! - [`instance`]: Monte-Carlo subsampling curves ρ(A%).
//! - [`cross`]: cross-benchmark ρ(Y_i) and anchor classification.
//!
//! [`report`] renders results as JSON fragments, CSV tables and SVG figures,
//! and [`cli`] wires everything into the `benchred` binary.

pub mod cli;
pub mod cross;
pub mod datamodel;
pub mod dimension;
pub mod error;
pub mod instance;
pub mod metrics;
pub mod report;
pub mod rng;
pub mod synth;

pub use datamodel::{
    build_matrix, parse_records, select_models, AxisKind, EvalRecord, Format, ModelSelection,
    RecordSet, ScoreMatrix, SelectionMode,
};
pub use error::{Error, Location, Result};
pub use metrics::{corr, plcc, r2, rank, srcc, CorrValue, Metric, RankVector};
