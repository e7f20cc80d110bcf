//! Deliberately naive re-implementations of the correlation metrics.
//!
//! Nothing here calls into the library's metric code: ranks are counted
//! pairwise, and correlations use the all-pairs difference form
//! `Σ_{i<j} (x_i − x_j)(y_i − y_j)` instead of mean-centering.

use benchred::Metric;

/// Descending fractional rank by counting: 1 + #greater + (#equal − 1) / 2.
pub fn naive_rank(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let greater = x.iter().filter(|&&w| w > v).count() as f64;
            let equal = x.iter().filter(|&&w| w == v).count() as f64;
            1.0 + greater + (equal - 1.0) / 2.0
        })
        .collect()
}

fn pair_sums(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let (dx, dy) = (x[i] - x[j], y[i] - y[j]);
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
    }
    (sxx, syy, sxy)
}

fn constant(x: &[f64]) -> bool {
    x.iter().all(|&v| v == x[0])
}

/// Pearson r via all-pairs differences; `None` for zero variance.
pub fn pairwise_pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if constant(x) || constant(y) {
        return None;
    }
    let (sxx, syy, sxy) = pair_sums(x, y);
    Some(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Closed-form SRCC, exact only without ties.
pub fn srcc_closed_form(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (naive_rank(x), naive_rank(y));
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

pub fn has_ties(x: &[f64]) -> bool {
    (0..x.len()).any(|i| (i + 1..x.len()).any(|j| x[i] == x[j]))
}

/// SRCC: closed form when tie-free, Pearson on naive ranks otherwise.
pub fn oracle_srcc(x: &[f64], y: &[f64]) -> Option<f64> {
    if constant(x) || constant(y) {
        return None;
    }
    if !has_ties(x) && !has_ties(y) {
        Some(srcc_closed_form(x, y))
    } else {
        pairwise_pearson(&naive_rank(x), &naive_rank(y))
    }
}

/// Identity-predictor R², with `Σ(y − ȳ)² = Σ_{i<j}(y_i − y_j)² / n`.
pub fn oracle_r2(prediction: &[f64], truth: &[f64]) -> Option<f64> {
    if constant(truth) {
        return None;
    }
    let (_, syy, _) = pair_sums(truth, truth);
    let ss_tot = syy / truth.len() as f64;
    let ss_res: f64 = prediction
        .iter()
        .zip(truth)
        .map(|(p, t)| (t - p) * (t - p))
        .sum();
    Some(1.0 - ss_res / ss_tot)
}

pub fn oracle_corr(metric: Metric, x: &[f64], y: &[f64]) -> Option<f64> {
    match metric {
        Metric::Srcc => oracle_srcc(x, y),
        Metric::Plcc => pairwise_pearson(x, y),
        Metric::R2 => oracle_r2(x, y),
    }
}

/// Column `c` of a row-major table.
pub fn column(rows: &[Vec<f64>], c: usize) -> Vec<f64> {
    rows.iter().map(|r| r[c]).collect()
}

/// Row means accumulated left to right.
pub fn row_means(rows: &[Vec<f64>], cols: &[usize]) -> Vec<f64> {
    rows.iter()
        .map(|r| {
            let mut acc = 0.0;
            for &c in cols {
                acc += r[c];
            }
            acc / cols.len() as f64
        })
        .collect()
}
