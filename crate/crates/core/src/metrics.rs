//! Fractional ranking and the three correlation measures.
//!
//! SRCC is Pearson's r on tie-averaged ranks; with no ties this is exactly
//! `1 - 6 Σd² / (n(n² - 1))`. PLCC and R² work on raw scores. R² uses the
//! prediction directly as ŷ with no fitted regression, so it is directed and
//! can be negative.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest sample size any metric accepts.
pub const MIN_SAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Srcc,
    Plcc,
    R2,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Srcc, Metric::Plcc, Metric::R2];

    /// Whether `corr(x, y) == corr(y, x)`.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, Metric::R2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Srcc => "srcc",
            Metric::Plcc => "plcc",
            Metric::R2 => "r2",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "srcc" => Ok(Metric::Srcc),
            "plcc" => Ok(Metric::Plcc),
            "r2" => Ok(Metric::R2),
            _ => Err(Error::InvalidArgument(format!("unknown metric '{s}'"))),
        }
    }
}

/// Fractional ranks, rank 1 = highest score.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector(Vec<f64>);

impl RankVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A correlation value, or a marker that the statistic is undefined
/// (zero variance on an input).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrValue {
    pub value: f64,
    pub defined: bool,
}

impl CorrValue {
    pub fn defined(value: f64) -> Self {
        CorrValue {
            value,
            defined: true,
        }
    }

    pub fn undefined() -> Self {
        CorrValue {
            value: f64::NAN,
            defined: false,
        }
    }

    pub fn get(self) -> Option<f64> {
        self.defined.then_some(self.value)
    }
}

/// Descending fractional ranks; tied scores share the mean of their positions.
pub fn rank(scores: &[f64]) -> RankVector {
    let n = scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let r = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = r;
        }
        start = end;
    }
    RankVector(ranks)
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < MIN_SAMPLES {
        return Err(Error::TooFew {
            what: "samples",
            needed: MIN_SAMPLES,
            got: x.len(),
        });
    }
    Ok(())
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&a| a == v[0])
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn pearson(x: &[f64], y: &[f64]) -> CorrValue {
    if is_constant(x) || is_constant(y) {
        return CorrValue::undefined();
    }
    if x == y {
        return CorrValue::defined(1.0);
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return CorrValue::undefined();
    }
    CorrValue::defined((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation with tie correction.
pub fn srcc(x: &[f64], y: &[f64]) -> Result<CorrValue> {
    check_pair(x, y)?;
    Ok(pearson(rank(x).as_slice(), rank(y).as_slice()))
}

/// Pearson linear correlation of raw values.
pub fn plcc(x: &[f64], y: &[f64]) -> Result<CorrValue> {
    check_pair(x, y)?;
    Ok(pearson(x, y))
}

/// Coefficient of determination of `truth` by `prediction` used as-is.
pub fn r2(prediction: &[f64], truth: &[f64]) -> Result<CorrValue> {
    check_pair(prediction, truth)?;
    if is_constant(truth) {
        return Ok(CorrValue::undefined());
    }
    let m = mean(truth);
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for (&p, &t) in prediction.iter().zip(truth) {
        ss_res += (t - p) * (t - p);
        ss_tot += (t - m) * (t - m);
    }
    if ss_tot == 0.0 {
        return Ok(CorrValue::undefined());
    }
    Ok(CorrValue::defined(1.0 - ss_res / ss_tot))
}

/// Dispatches on `metric`. For R², `x` is the prediction and `y` the truth.
pub fn corr(metric: Metric, x: &[f64], y: &[f64]) -> Result<CorrValue> {
    match metric {
        Metric::Srcc => srcc(x, y),
        Metric::Plcc => plcc(x, y),
        Metric::R2 => r2(x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(c: Result<CorrValue>) -> f64 {
        c.unwrap().get().expect("defined")
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[0.9, 0.5, 0.7]).as_slice(), &[1.0, 3.0, 2.0]);
        assert_eq!(rank(&[0.5, 0.5, 0.1]).as_slice(), &[1.5, 1.5, 3.0]);
        assert_eq!(rank(&[0.3; 4]).as_slice(), &[2.5; 4]);
        assert_eq!(rank(&[0.2]).as_slice(), &[1.0]);
    }

    #[test]
    fn srcc_examples() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [2.0, 1.0, 4.0, 3.0, 5.0];
        assert!((val(srcc(&x, &y)) - 0.8).abs() < 1e-12);
        let cubed: Vec<f64> = x.iter().map(|v: &f64| v.powi(3) + 7.0).collect();
        assert_eq!(val(srcc(&x, &cubed)), 1.0);
        let rev: Vec<f64> = x.iter().rev().copied().collect();
        assert_eq!(val(srcc(&x, &rev)), -1.0);
    }

    #[test]
    fn plcc_examples() {
        let x = [0.1, 0.4, 0.35, 0.8];
        let affine: Vec<f64> = x.iter().map(|v| 2.0 * v + 3.0).collect();
        assert!((val(plcc(&x, &affine)) - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((val(plcc(&x, &neg)) + 1.0).abs() < 1e-12);
        assert!((val(plcc(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0])) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn r2_examples() {
        let t = [0.2, 0.9, 0.4, 0.7];
        assert_eq!(val(r2(&t, &t)), 1.0);
        let m = t.iter().sum::<f64>() / 4.0;
        assert_eq!(val(r2(&[m; 4], &t)), 0.0);
        assert!((val(r2(&[0.0; 3], &[0.0, 1.0, 2.0])) + 1.5).abs() < 1e-12);
    }

    #[test]
    fn r2_orientation_matters() {
        let truth = [0.0, 1.0, 2.0];
        let pred = [0.0, 0.0, 0.0];
        assert!(r2(&pred, &truth).unwrap().defined);
        // constant truth
        assert!(!r2(&truth, &pred).unwrap().defined);
    }

    #[test]
    fn dispatch() {
        let v = [0.3, 0.1, 0.8, 0.5];
        let neg: Vec<f64> = v.iter().map(|a| -a).collect();
        assert_eq!(val(corr(Metric::Srcc, &v, &v)), 1.0);
        assert_eq!(val(corr(Metric::Plcc, &v, &neg)), -1.0);
        assert_eq!(val(corr(Metric::R2, &v, &v)), 1.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            srcc(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::TooFew { .. })
        ));
        assert!(matches!(
            plcc(&[1.0, 2.0, 3.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch(3, 2))
        ));
        assert!(!srcc(&[0.1; 3], &[1.0, 2.0, 3.0]).unwrap().defined);
        assert!(!plcc(&[1.0, 2.0, 3.0], &[0.1; 3]).unwrap().defined);
        assert!(!corr(Metric::Srcc, &[0.1; 3], &[0.1; 3]).unwrap().defined);
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("kendall".parse::<Metric>().is_err());
    }
}
