//! Instance redundancy: how well rankings on random instance subsets agree
//! with the ranking on the full benchmark, across a grid of sampling ratios.
//!
//! Every trial draws its subset from its own seed, derived from the plan seed
//! and the (ratio, trial) indices, so a curve does not depend on how trials
//! are scheduled across threads.

use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datamodel::{AxisKind, ModelSelection, ScoreMatrix};
use crate::error::{Error, Result};
use crate::metrics::{self, CorrValue, Metric, RankVector, MIN_SAMPLES};
use crate::rng;

/// Repetitions per ratio.
pub const DEFAULT_TRIALS: usize = 100;
/// Correlation at or above which a subset is considered as good as the full set.
pub const DEFAULT_THRESHOLD: f64 = 0.95;
/// Default `--ratios` grid, in percent.
pub const DEFAULT_RATIO_SPEC: &str = "1,5:100:5";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub ratios: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub metric: Metric,
}

impl SamplingPlan {
    pub fn new(ratios: Vec<f64>, trials: usize, seed: u64, metric: Metric) -> Result<Self> {
        if ratios.is_empty() {
            return Err(Error::InvalidArgument("empty ratio grid".into()));
        }
        if let Some(r) = ratios.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
            return Err(Error::InvalidArgument(format!("ratio {r} outside (0, 1]")));
        }
        if ratios.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "ratios must be strictly increasing".into(),
            ));
        }
        if trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(Self {
            ratios,
            trials,
            seed,
            metric,
        })
    }

    /// Plan over the default grid with the default trial count.
    pub fn with_defaults(seed: u64, metric: Metric) -> Self {
        let ratios = parse_ratio_spec(DEFAULT_RATIO_SPEC).expect("default grid parses");
        Self::new(ratios, DEFAULT_TRIALS, seed, metric).expect("default plan is valid")
    }
}

/// Parses a percent grid such as `1,5:100:5` into ratios in (0, 1].
///
/// Items are comma separated; each is a percent or an inclusive
/// `start:end:step` range.
pub fn parse_ratio_spec(spec: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::InvalidArgument(format!("invalid ratio spec '{spec}': {why}"));
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| bad(&format!("'{s}' is not a number")))
    };
    let mut percents = Vec::new();
    for item in spec.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [p] => percents.push(num(p)?),
            [a, b, step] => {
                let (a, b, step) = (num(a)?, num(b)?, num(step)?);
                if step <= 0.0 || b < a {
                    return Err(bad("range needs start <= end and a positive step"));
                }
                let count = ((b - a) / step + 1e-9).floor() as usize;
                percents.extend((0..=count).map(|k| a + k as f64 * step));
            }
            _ => return Err(bad(&format!("cannot read '{item}'"))),
        }
    }
    if let Some(p) = percents.iter().find(|p| !(**p > 0.0 && **p <= 100.0)) {
        return Err(bad(&format!("{p}% outside (0, 100]")));
    }
    if percents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("percents must be strictly increasing"));
    }
    Ok(percents.into_iter().map(|p| p / 100.0).collect())
}

/// Number of instances drawn at `ratio`: `round(ratio · m)` clamped to `[1, m]`.
pub fn subset_size(ratio: f64, m: usize) -> usize {
    ((ratio * m as f64 + 0.5).floor() as usize).clamp(1, m)
}

/// Seed of trial `trial` at grid position `ratio_index`.
pub fn trial_seed(master: u64, ratio_index: usize, trial: usize) -> u64 {
    rng::derive_seed(master, &[ratio_index as u64, trial as u64])
}

/// `s` distinct column indices out of `m`, sorted ascending.
pub fn sample_indices(m: usize, s: usize, seed: u64) -> Vec<usize> {
    let mut rng = rng::stream(seed, &[]);
    let mut idx = index::sample(&mut rng, m, s).into_vec();
    idx.sort_unstable();
    idx
}

/// Per-model mean over the given instance columns.
///
/// Accumulates in the order given, so the full sorted index set reproduces
/// [`GroundTruth::accuracy`] bit for bit.
pub fn sampled_accuracy(instances: &ScoreMatrix, indices: &[usize]) -> Vec<f64> {
    (0..instances.n_rows())
        .map(|r| {
            let row = instances.row(r);
            let mut acc = 0.0;
            for &i in indices {
                acc += row[i];
            }
            acc / indices.len() as f64
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub ranks: RankVector,
    pub accuracy: Vec<f64>,
}

fn check_instances(instances: &ScoreMatrix) -> Result<()> {
    if instances.axis() != AxisKind::Instance {
        return Err(Error::InvalidArgument(
            "expected an instance-axis score matrix".into(),
        ));
    }
    if instances.n_rows() < MIN_SAMPLES {
        return Err(Error::TooFew {
            what: "models",
            needed: MIN_SAMPLES,
            got: instances.n_rows(),
        });
    }
    if instances.n_cols() == 0 {
        return Err(Error::TooFew {
            what: "instances",
            needed: 1,
            got: 0,
        });
    }
    Ok(())
}

fn full_accuracy(instances: &ScoreMatrix) -> Vec<f64> {
    let all: Vec<usize> = (0..instances.n_cols()).collect();
    sampled_accuracy(instances, &all)
}

/// Full-benchmark accuracy of the selected models and its ranking.
pub fn ground_truth_ranking(
    instances: &ScoreMatrix,
    selection: &ModelSelection,
) -> Result<GroundTruth> {
    let restricted = instances.restrict_rows(&selection.selected_ids)?;
    check_instances(&restricted)?;
    let accuracy = full_accuracy(&restricted);
    Ok(GroundTruth {
        ranks: metrics::rank(&accuracy),
        accuracy,
    })
}

fn compare(metric: Metric, sampled: &[f64], full: &[f64]) -> Result<CorrValue> {
    // SRCC ranks internally; R² takes the sampled accuracy as the prediction.
    metrics::corr(metric, sampled, full)
}

/// One subsampling trial on an (already selected) instance matrix.
pub fn run_trial(
    instances: &ScoreMatrix,
    ratio: f64,
    trial_seed: u64,
    metric: Metric,
) -> Result<CorrValue> {
    check_instances(instances)?;
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "ratio {ratio} outside (0, 1]"
        )));
    }
    let full = full_accuracy(instances);
    trial_against(instances, &full, ratio, trial_seed, metric)
}

fn trial_against(
    instances: &ScoreMatrix,
    full: &[f64],
    ratio: f64,
    seed: u64,
    metric: Metric,
) -> Result<CorrValue> {
    let m = instances.n_cols();
    let idx = sample_indices(m, subset_size(ratio, m), seed);
    compare(metric, &sampled_accuracy(instances, &idx), full)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub ratio: f64,
    /// Instances drawn per trial.
    pub sample_size: usize,
    /// Mean over defined trials; `None` if every trial was undefined.
    pub mean: Option<f64>,
    /// Sample standard deviation over defined trials (0 for a single trial).
    pub std: Option<f64>,
    pub undefined_trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RedundancyCurve {
    pub points: Vec<CurvePoint>,
    pub threshold: f64,
    pub minimal_sufficient_ratio: Option<f64>,
    pub plan: SamplingPlan,
    pub selection: ModelSelection,
    pub n_instances: usize,
}

/// Mean correlation between subset and full rankings at every plan ratio.
pub fn curve(
    instances: &ScoreMatrix,
    plan: &SamplingPlan,
    selection: &ModelSelection,
    threshold: f64,
) -> Result<RedundancyCurve> {
    let plan = SamplingPlan::new(plan.ratios.clone(), plan.trials, plan.seed, plan.metric)?;
    check_threshold(threshold)?;
    let restricted = instances.restrict_rows(&selection.selected_ids)?;
    check_instances(&restricted)?;
    let full = full_accuracy(&restricted);

    let jobs: Vec<(usize, usize)> = (0..plan.ratios.len())
        .flat_map(|r| (0..plan.trials).map(move |t| (r, t)))
        .collect();
    let results: Vec<CorrValue> = jobs
        .par_iter()
        .map(|&(r, t)| {
            trial_against(
                &restricted,
                &full,
                plan.ratios[r],
                trial_seed(plan.seed, r, t),
                plan.metric,
            )
        })
        .collect::<Result<_>>()?;

    let m = restricted.n_cols();
    let points: Vec<CurvePoint> = plan
        .ratios
        .iter()
        .zip(results.chunks(plan.trials))
        .map(|(&ratio, trials)| summarize(ratio, subset_size(ratio, m), trials))
        .collect();

    let mut curve = RedundancyCurve {
        points,
        threshold,
        minimal_sufficient_ratio: None,
        plan,
        selection: selection.clone(),
        n_instances: m,
    };
    curve.minimal_sufficient_ratio = minimal_ratio(&curve, threshold);
    Ok(curve)
}

fn summarize(ratio: f64, sample_size: usize, trials: &[CorrValue]) -> CurvePoint {
    let values: Vec<f64> = trials.iter().filter_map(|c| c.get()).collect();
    let undefined_trials = trials.len() - values.len();
    let (mean, std) = match values.len() {
        0 => (None, None),
        1 => (Some(values[0]), Some(0.0)),
        n => {
            let mean = values.iter().sum::<f64>() / n as f64;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            (Some(mean), Some(var.sqrt()))
        }
    };
    CurvePoint {
        ratio,
        sample_size,
        mean,
        std,
        undefined_trials,
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if threshold > 0.0 && threshold <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "threshold {threshold} outside (0, 1]"
        )))
    }
}

/// Smallest grid ratio whose mean correlation reaches `threshold`.
pub fn minimal_ratio(curve: &RedundancyCurve, threshold: f64) -> Option<f64> {
    curve
        .points
        .iter()
        .find(|p| p.mean.is_some_and(|m| m >= threshold))
        .map(|p| p.ratio)
}
