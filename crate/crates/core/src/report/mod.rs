//! Machine-readable report fragments, the merged report with its
//! recommendations, CSV tables, and SVG figures (in [`svg`]).
//!
//! The JSON layout is documented in `docs/report-schema.md`.

pub mod svg;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cross::{self, Label};
use crate::datamodel::{hex_digest, SelectionMode};
use crate::dimension::{flag_redundant_pairs, FlaggedPair, RedundancyMatrix};
use crate::error::{Error, Result};
use crate::instance::{CurvePoint, RedundancyCurve};
use crate::metrics::Metric;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionInfo {
    pub mode: SelectionMode,
    pub selected: Vec<String>,
}

impl SelectionInfo {
    fn from(selection: &crate::datamodel::ModelSelection) -> Self {
        SelectionInfo {
            mode: selection.mode,
            selected: selection.selected_ids.clone(),
        }
    }
}

/// A dimension or benchmark redundancy matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFragment {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<String>,
    pub input_fingerprint: String,
    pub metric: Metric,
    pub selection: SelectionInfo,
    pub item_ids: Vec<String>,
    /// Row-major; `null` marks an undefined correlation. For R² rows predict columns.
    pub cells: Vec<Vec<Option<f64>>>,
    pub per_item: Vec<Option<f64>>,
    pub overall: Option<f64>,
    pub skipped_pairs: usize,
    pub flag_threshold: f64,
    pub flagged_pairs: Vec<FlaggedPair>,
    pub dropped_models: Vec<String>,
}

impl MatrixFragment {
    pub fn new(
        matrix: &RedundancyMatrix,
        benchmark: Option<String>,
        input_fingerprint: String,
        flag_threshold: f64,
        dropped_models: Vec<String>,
    ) -> Self {
        let m = matrix.len();
        MatrixFragment {
            benchmark,
            input_fingerprint,
            metric: matrix.metric,
            selection: SelectionInfo::from(&matrix.selection),
            item_ids: matrix.item_ids.clone(),
            cells: (0..m)
                .map(|i| matrix.row(i).iter().map(|c| c.get()).collect())
                .collect(),
            per_item: matrix.per_item.clone(),
            overall: matrix.overall,
            skipped_pairs: matrix.skipped_pairs,
            flag_threshold,
            flagged_pairs: flag_redundant_pairs(matrix, flag_threshold),
            dropped_models,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkLabel {
    pub benchmark: String,
    pub rho: Option<f64>,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossFragment {
    #[serde(flatten)]
    pub matrix: MatrixFragment,
    pub anchor_threshold: f64,
    pub distinct_threshold: f64,
    /// The default thresholds are rules of thumb, not calibrated values.
    pub thresholds_heuristic: bool,
    pub excluded_dimensions: Vec<String>,
    pub excluded_instances: Vec<String>,
    pub labels: Vec<BenchmarkLabel>,
}

impl CrossFragment {
    pub fn new(
        matrix: &RedundancyMatrix,
        input_fingerprint: String,
        flag_threshold: f64,
        dropped_models: Vec<String>,
        anchor_threshold: f64,
        distinct_threshold: f64,
        excluded: (Vec<String>, Vec<String>),
    ) -> Result<Self> {
        let labels = cross::classify(matrix, anchor_threshold, distinct_threshold)?;
        Ok(CrossFragment {
            matrix: MatrixFragment::new(
                matrix,
                None,
                input_fingerprint,
                flag_threshold,
                dropped_models,
            ),
            anchor_threshold,
            distinct_threshold,
            thresholds_heuristic: true,
            excluded_dimensions: excluded.0,
            excluded_instances: excluded.1,
            labels: matrix
                .item_ids
                .iter()
                .zip(&matrix.per_item)
                .zip(labels)
                .map(|((b, rho), label)| BenchmarkLabel {
                    benchmark: b.clone(),
                    rho: *rho,
                    label,
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointOut {
    pub ratio: f64,
    pub sample_size: usize,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub undefined: usize,
}

impl From<&CurvePoint> for PointOut {
    fn from(p: &CurvePoint) -> Self {
        PointOut {
            ratio: p.ratio,
            sample_size: p.sample_size,
            mean: p.mean,
            std: p.std,
            undefined: p.undefined_trials,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFragment {
    pub benchmark: String,
    pub input_fingerprint: String,
    pub metric: Metric,
    pub selection: SelectionInfo,
    pub seed: u64,
    pub trials: usize,
    pub n_instances: usize,
    pub points: Vec<PointOut>,
    pub threshold: f64,
    pub minimal_sufficient_ratio: Option<f64>,
    pub dropped_models: Vec<String>,
}

impl CurveFragment {
    pub fn new(
        curve: &RedundancyCurve,
        benchmark: String,
        input_fingerprint: String,
        dropped_models: Vec<String>,
    ) -> Self {
        CurveFragment {
            benchmark,
            input_fingerprint,
            metric: curve.plan.metric,
            selection: SelectionInfo::from(&curve.selection),
            seed: curve.plan.seed,
            trials: curve.plan.trials,
            n_instances: curve.n_instances,
            points: curve.points.iter().map(PointOut::from).collect(),
            threshold: curve.threshold,
            minimal_sufficient_ratio: curve.minimal_sufficient_ratio,
            dropped_models,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fragment {
    Dimension(MatrixFragment),
    Instance(CurveFragment),
    CrossBenchmark(CrossFragment),
}

impl Fragment {
    pub fn input_fingerprint(&self) -> &str {
        match self {
            Fragment::Dimension(f) => &f.input_fingerprint,
            Fragment::Instance(f) => &f.input_fingerprint,
            Fragment::CrossBenchmark(f) => &f.matrix.input_fingerprint,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedDimensionPair {
    pub benchmark: Option<String>,
    pub metric: Metric,
    pub selection: SelectionMode,
    pub a: String,
    pub b: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MostRedundantDimension {
    pub benchmark: Option<String>,
    pub metric: Metric,
    pub selection: SelectionMode,
    pub dimension: String,
    pub rho: f64,
    pub benchmark_internal_redundancy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub flagged_pairs: Vec<FlaggedDimensionPair>,
    pub most_redundant: Vec<MostRedundantDimension>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceCheckEntry {
    pub benchmark: String,
    pub metric: Metric,
    pub selection: SelectionMode,
    pub threshold: f64,
    pub n_instances: usize,
    pub minimal_sufficient_ratio: Option<f64>,
    /// Instances needed at the minimal sufficient ratio.
    pub suggested_instance_count: Option<usize>,
    /// Share of instances that could be removed, `1 - suggested / n_instances`.
    pub removable_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckEntry {
    pub metric: Metric,
    pub selection: SelectionMode,
    pub anchors: Vec<String>,
    pub distinct: Vec<String>,
    /// Highest ρ(Y_i): the best single representative of the domain.
    pub most_representative: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Recommendations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension_check: Option<DimensionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_check: Option<Vec<InstanceCheckEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_benchmark_check: Option<Vec<CrossCheckEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    /// SHA-256 over the sorted distinct input fingerprints of all fragments.
    pub inputs_fingerprint: String,
    pub input_fingerprints: Vec<String>,
    pub fragments: Vec<Fragment>,
    pub recommendations: Recommendations,
}

impl Report {
    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

/// Merges fragments into a report and derives the recommendation checklist.
pub fn emit_report(fragments: Vec<Fragment>) -> Result<Report> {
    if fragments.is_empty() {
        return Err(Error::InvalidArgument("no report fragments".into()));
    }
    let prints: BTreeSet<&str> = fragments.iter().map(Fragment::input_fingerprint).collect();
    let mut hasher = Sha256::new();
    for p in &prints {
        hasher.update(p.as_bytes());
        hasher.update(b"\n");
    }
    let inputs_fingerprint = hex_digest(&hasher.finalize());
    let input_fingerprints = prints.into_iter().map(str::to_owned).collect();

    let mut rec = Recommendations::default();
    for f in &fragments {
        match f {
            Fragment::Dimension(d) => {
                let check = rec.dimension_check.get_or_insert_with(|| DimensionCheck {
                    flagged_pairs: Vec::new(),
                    most_redundant: Vec::new(),
                });
                check
                    .flagged_pairs
                    .extend(d.flagged_pairs.iter().map(|p| FlaggedDimensionPair {
                        benchmark: d.benchmark.clone(),
                        metric: d.metric,
                        selection: d.selection.mode,
                        a: p.a.clone(),
                        b: p.b.clone(),
                        value: p.value,
                    }));
                let best = d
                    .item_ids
                    .iter()
                    .zip(&d.per_item)
                    .filter_map(|(id, rho)| rho.map(|r| (id, r)))
                    .fold(None, |best: Option<(&String, f64)>, (id, r)| match best {
                        Some((_, b)) if b >= r => best,
                        _ => Some((id, r)),
                    });
                if let Some((id, rho)) = best {
                    check.most_redundant.push(MostRedundantDimension {
                        benchmark: d.benchmark.clone(),
                        metric: d.metric,
                        selection: d.selection.mode,
                        dimension: id.clone(),
                        rho,
                        benchmark_internal_redundancy: d.overall,
                    });
                }
            }
            Fragment::Instance(c) => {
                let suggested = c
                    .minimal_sufficient_ratio
                    .and_then(|r| c.points.iter().find(|p| p.ratio == r))
                    .map(|p| p.sample_size);
                rec.instance_check
                    .get_or_insert_with(Vec::new)
                    .push(InstanceCheckEntry {
                        benchmark: c.benchmark.clone(),
                        metric: c.metric,
                        selection: c.selection.mode,
                        threshold: c.threshold,
                        n_instances: c.n_instances,
                        minimal_sufficient_ratio: c.minimal_sufficient_ratio,
                        suggested_instance_count: suggested,
                        removable_fraction: suggested
                            .map(|s| 1.0 - s as f64 / c.n_instances as f64),
                    });
            }
            Fragment::CrossBenchmark(x) => {
                let pick = |want: Label| {
                    x.labels
                        .iter()
                        .filter(|l| l.label == want)
                        .map(|l| l.benchmark.clone())
                        .collect::<Vec<_>>()
                };
                let most = x
                    .labels
                    .iter()
                    .filter_map(|l| l.rho.map(|r| (l, r)))
                    .fold(
                        None,
                        |best: Option<(&BenchmarkLabel, f64)>, (l, r)| match best {
                            Some((_, b)) if b >= r => best,
                            _ => Some((l, r)),
                        },
                    )
                    .map(|(l, _)| l.benchmark.clone());
                rec.cross_benchmark_check
                    .get_or_insert_with(Vec::new)
                    .push(CrossCheckEntry {
                        metric: x.matrix.metric,
                        selection: x.matrix.selection.mode,
                        anchors: pick(Label::Anchor),
                        distinct: pick(Label::Distinct),
                        most_representative: most,
                    });
            }
        }
    }

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        inputs_fingerprint,
        input_fingerprints,
        fragments,
        recommendations: rec,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// The matrix as CSV: header `item,<ids…>,rho`, one row per item.
pub fn matrix_csv(f: &MatrixFragment) -> String {
    let mut out = format!("item,{},rho\n", f.item_ids.join(","));
    for ((id, row), rho) in f.item_ids.iter().zip(&f.cells).zip(&f.per_item) {
        let cells: Vec<String> = row.iter().map(|c| opt(*c)).collect();
        out.push_str(&format!("{id},{},{}\n", cells.join(","), opt(*rho)));
    }
    out
}

/// Curve points as CSV: `ratio,sample_size,mean,std,undefined`.
pub fn curve_csv(f: &CurveFragment) -> String {
    let mut out = String::from("ratio,sample_size,mean,std,undefined\n");
    for p in &f.points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.ratio,
            p.sample_size,
            opt(p.mean),
            opt(p.std),
            p.undefined
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datamodel::{select_models, AxisKind, ScoreMatrix};
    use crate::dimension::pairwise_matrix;
    use crate::instance::{curve, SamplingPlan};

    fn dims() -> ScoreMatrix {
        ScoreMatrix::new(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            ["x", "y", "z"].map(String::from).to_vec(),
            vec![0.9, 0.8, 0.1, 0.5, 0.6, 0.9, 0.3, 0.2, 0.4, 0.1, 0.15, 0.6],
            AxisKind::Dimension,
        )
        .unwrap()
    }

    fn dim_fragment() -> Fragment {
        let m = dims();
        let (sel, _) = select_models(&m, SelectionMode::All).unwrap();
        let r = pairwise_matrix(&m, Metric::Srcc, &sel).unwrap();
        Fragment::Dimension(MatrixFragment::new(
            &r,
            Some("B".into()),
            "f1".into(),
            0.95,
            vec![],
        ))
    }

    #[test]
    fn empty_report_is_an_error() {
        assert!(emit_report(vec![]).is_err());
    }

    #[test]
    fn dims_only_report_has_only_dimension_check() {
        let report = emit_report(vec![dim_fragment()]).unwrap();
        assert_eq!(report.fragments.len(), 1);
        assert!(report.recommendations.dimension_check.is_some());
        assert!(report.recommendations.instance_check.is_none());
        assert!(report.recommendations.cross_benchmark_check.is_none());
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let recs = json["recommendations"].as_object().unwrap();
        assert_eq!(recs.keys().collect::<Vec<_>>(), ["dimension_check"]);
        // x and y rank the models identically
        assert_eq!(
            json["recommendations"]["dimension_check"]["flagged_pairs"][0]["a"],
            "x"
        );
        assert_eq!(
            json["recommendations"]["dimension_check"]["flagged_pairs"][0]["b"],
            "y"
        );
    }

    #[test]
    fn json_round_trips() {
        let inst = ScoreMatrix::new(
            ["a", "b", "c"].map(String::from).to_vec(),
            ["q1", "q2", "q3", "q4"].map(String::from).to_vec(),
            vec![1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            AxisKind::Instance,
        )
        .unwrap();
        let (sel, _) = select_models(&inst, SelectionMode::All).unwrap();
        let plan = SamplingPlan::new(vec![0.25, 0.5, 1.0], 10, 4, Metric::Srcc).unwrap();
        let c = curve(&inst, &plan, &sel, 0.95).unwrap();
        let cf = Fragment::Instance(CurveFragment::new(&c, "B".into(), "f2".into(), vec![]));
        let report = emit_report(vec![dim_fragment(), cf]).unwrap();
        let text = report.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
        assert_eq!(report.input_fingerprints, ["f1", "f2"]);
        let entry = &report.recommendations.instance_check.as_ref().unwrap()[0];
        assert_eq!(entry.minimal_sufficient_ratio, Some(1.0));
        assert_eq!(entry.suggested_instance_count, Some(4));
        assert_eq!(entry.removable_fraction, Some(0.0));
    }

    #[test]
    fn csv_tables() {
        let Fragment::Dimension(f) = dim_fragment() else {
            unreachable!()
        };
        let csv = matrix_csv(&f);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "item,x,y,z,rho");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("x,1,1,"));
    }
}
