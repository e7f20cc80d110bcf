//! Cross-benchmark redundancy ρ(Y_i) and anchor / distinct classification.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::datamodel::{AxisKind, ModelSelection, ScoreMatrix};
use crate::dimension::{self, RedundancyMatrix};
use crate::error::{Error, Result};
use crate::metrics::Metric;

/// Heuristic defaults; both are configurable.
pub const DEFAULT_ANCHOR_THRESHOLD: f64 = 0.8;
pub const DEFAULT_DISTINCT_THRESHOLD: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    /// Representative of what the other benchmarks measure.
    Anchor,
    Neutral,
    /// Measures something the rest of the domain does not (or noise).
    Distinct,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Anchor => "anchor",
            Label::Neutral => "neutral",
            Label::Distinct => "distinct",
        })
    }
}

/// Pairwise benchmark correlation over a benchmark-axis matrix; `per_item`
/// holds ρ(Y_i).
pub fn cross_matrix(
    benchmarks: &ScoreMatrix,
    metric: Metric,
    selection: &ModelSelection,
) -> Result<RedundancyMatrix> {
    if benchmarks.axis() != AxisKind::Benchmark {
        return Err(Error::InvalidArgument(
            "expected a benchmark-axis score matrix".into(),
        ));
    }
    if benchmarks.n_cols() < 2 {
        return Err(Error::TooFew {
            what: "benchmarks",
            needed: 2,
            got: benchmarks.n_cols(),
        });
    }
    dimension::compute(benchmarks, metric, selection)
}

/// Labels each benchmark by its ρ(Y_i). A benchmark whose ρ is undefined is
/// labeled [`Label::Neutral`].
pub fn classify(
    matrix: &RedundancyMatrix,
    anchor_threshold: f64,
    distinct_threshold: f64,
) -> Result<Vec<Label>> {
    if distinct_threshold.partial_cmp(&anchor_threshold) != Some(Ordering::Less) {
        return Err(Error::InvalidArgument(format!(
            "distinct threshold {distinct_threshold} must be below anchor threshold {anchor_threshold}"
        )));
    }
    Ok(matrix
        .per_item
        .iter()
        .map(|rho| match rho {
            Some(r) if *r >= anchor_threshold => Label::Anchor,
            Some(r) if *r <= distinct_threshold => Label::Distinct,
            _ => Label::Neutral,
        })
        .collect())
}
