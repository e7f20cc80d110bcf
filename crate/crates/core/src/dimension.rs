//! Dimension redundancy: pairwise correlation among a benchmark's dimensions,
//! the per-dimension average ρ(X_i) and the benchmark-internal mean ρ_BI.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datamodel::{AxisKind, ModelSelection, ScoreMatrix};
use crate::error::{Error, Result};
use crate::metrics::{self, CorrValue, Metric, MIN_SAMPLES};

/// Default cut-off for flagging a pair as redundant.
pub const DEFAULT_FLAG_THRESHOLD: f64 = 0.95;

/// Pairwise correlations among items (dimensions or benchmarks) plus their
/// per-item and overall averages.
#[derive(Debug, Clone, PartialEq)]
pub struct RedundancyMatrix {
    pub item_ids: Vec<String>,
    /// Row-major `m × m`. For R² the row is the predictor.
    pub cells: Vec<CorrValue>,
    /// Mean of the defined off-diagonal cells of each row; `None` when a row
    /// has none.
    pub per_item: Vec<Option<f64>>,
    /// Mean of the defined `per_item` values.
    pub overall: Option<f64>,
    pub metric: Metric,
    pub selection: ModelSelection,
    pub axis: AxisKind,
    /// Off-diagonal cells left out of the averages because they were undefined.
    pub skipped_pairs: usize,
}

impl RedundancyMatrix {
    pub fn len(&self) -> usize {
        self.item_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.item_ids.is_empty()
    }

    pub fn cell(&self, row: usize, col: usize) -> CorrValue {
        self.cells[row * self.item_ids.len() + col]
    }

    pub fn row(&self, row: usize) -> &[CorrValue] {
        let m = self.item_ids.len();
        &self.cells[row * m..(row + 1) * m]
    }
}

/// Computes the pairwise matrix over the columns of `scores`, using only the
/// rows named by `selection`.
pub(crate) fn compute(
    scores: &ScoreMatrix,
    metric: Metric,
    selection: &ModelSelection,
) -> Result<RedundancyMatrix> {
    let m = scores.n_cols();
    if m < 2 {
        return Err(Error::TooFew {
            what: "columns",
            needed: 2,
            got: m,
        });
    }
    let restricted = scores.restrict_rows(&selection.selected_ids)?;
    if restricted.n_rows() < MIN_SAMPLES {
        return Err(Error::TooFew {
            what: "models",
            needed: MIN_SAMPLES,
            got: restricted.n_rows(),
        });
    }
    let columns: Vec<Vec<f64>> = (0..m).map(|c| restricted.column(c)).collect();

    let rows: Vec<Vec<CorrValue>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Ok(CorrValue::defined(1.0))
                    } else {
                        metrics::corr(metric, &columns[i], &columns[j])
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let cells: Vec<CorrValue> = rows.into_iter().flatten().collect();

    let mut skipped_pairs = 0;
    let per_item: Vec<Option<f64>> = (0..m)
        .map(|i| {
            let mut sum = 0.0;
            let mut n = 0usize;
            for j in (0..m).filter(|&j| j != i) {
                match cells[i * m + j].get() {
                    Some(v) => {
                        sum += v;
                        n += 1;
                    }
                    None => skipped_pairs += 1,
                }
            }
            (n > 0).then(|| sum / n as f64)
        })
        .collect();
    let defined: Vec<f64> = per_item.iter().flatten().copied().collect();
    let overall = (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64);

    Ok(RedundancyMatrix {
        item_ids: scores.col_ids().to_vec(),
        cells,
        per_item,
        overall,
        metric,
        selection: selection.clone(),
        axis: scores.axis(),
        skipped_pairs,
    })
}

/// Dimension redundancy matrix for a dimension-axis score matrix.
pub fn pairwise_matrix(
    dims: &ScoreMatrix,
    metric: Metric,
    selection: &ModelSelection,
) -> Result<RedundancyMatrix> {
    if dims.axis() != AxisKind::Dimension {
        return Err(Error::InvalidArgument(
            "expected a dimension-axis score matrix".into(),
        ));
    }
    compute(dims, metric, selection)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedPair {
    pub a: String,
    pub b: String,
    pub value: f64,
}

/// Off-diagonal cells with value at or above `threshold`, highest first.
///
/// Symmetric metrics report each unordered pair once (`a` before `b` in
/// item order); R² reports directed pairs with `a` as the predictor.
pub fn flag_redundant_pairs(matrix: &RedundancyMatrix, threshold: f64) -> Vec<FlaggedPair> {
    let m = matrix.len();
    let symmetric = matrix.metric.is_symmetric();
    let mut hits: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || (symmetric && j < i) {
                continue;
            }
            if let Some(v) = matrix.cell(i, j).get() {
                if v >= threshold {
                    hits.push((i, j, v));
                }
            }
        }
    }
    hits.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    hits.into_iter()
        .map(|(i, j, value)| FlaggedPair {
            a: matrix.item_ids[i].clone(),
            b: matrix.item_ids[j].clone(),
            value,
        })
        .collect()
}
