//! Evaluation records, score matrices and model selection.
//!
//! Records are ingested from CSV or JSON, validated as they arrive, and then
//! aggregated into dense [`ScoreMatrix`] tables. Rows and columns are always
//! sorted by id, and only models with complete coverage of the requested
//! columns are kept.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Location, Result};

pub const RECORD_HEADER: [&str; 5] = ["model", "benchmark", "dimension", "instance", "score"];
pub const AGGREGATED_HEADER: [&str; 3] = ["model", "benchmark", "score"];

/// One model's graded result on one benchmark instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    #[serde(rename = "model")]
    pub model_id: String,
    #[serde(rename = "benchmark")]
    pub benchmark_id: String,
    #[serde(rename = "dimension")]
    pub dimension_id: String,
    #[serde(rename = "instance")]
    pub instance_id: String,
    pub score: f64,
}

/// A pre-aggregated benchmark-level score, as published on leaderboards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkScore {
    #[serde(rename = "model")]
    pub model_id: String,
    #[serde(rename = "benchmark")]
    pub benchmark_id: String,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` means JSON, anything else is read as CSV.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisKind {
    Instance,
    Dimension,
    Benchmark,
}

/// Ids are restricted to `[A-Za-z0-9._/-]+`.
pub fn is_valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'.' | b'_' | b'/' | b'-'))
}

fn check_id(location: &Location, field: &str, id: &str) -> Result<()> {
    if is_valid_id(id) {
        Ok(())
    } else {
        Err(Error::Malformed {
            location: location.clone(),
            message: format!("invalid {field} id '{id}'"),
        })
    }
}

fn check_score(location: &Location, score: f64) -> Result<()> {
    if (0.0..=1.0).contains(&score) {
        Ok(())
    } else {
        Err(Error::ScoreRange {
            location: location.clone(),
            score,
        })
    }
}

/// A validated collection of [`EvalRecord`]s.
///
/// Uniqueness of `(model, benchmark, instance)` and the single-dimension rule
/// for instances are enforced on every [`RecordSet::push`], so records from
/// several files can be accumulated into one set.
#[derive(Debug, Clone, Default)]
pub struct RecordSet {
    records: Vec<EvalRecord>,
    keys: HashSet<(String, String, String)>,
    instance_dims: HashMap<(String, String), String>,
}

impl RecordSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_records(records: impl IntoIterator<Item = EvalRecord>) -> Result<Self> {
        let mut set = RecordSet::new();
        for (i, r) in records.into_iter().enumerate() {
            set.push(r, Location::Record(i))?;
        }
        Ok(set)
    }

    pub fn push(&mut self, record: EvalRecord, location: Location) -> Result<()> {
        check_id(&location, "model", &record.model_id)?;
        check_id(&location, "benchmark", &record.benchmark_id)?;
        check_id(&location, "dimension", &record.dimension_id)?;
        check_id(&location, "instance", &record.instance_id)?;
        check_score(&location, record.score)?;

        let key = (
            record.model_id.clone(),
            record.benchmark_id.clone(),
            record.instance_id.clone(),
        );
        if self.keys.contains(&key) {
            return Err(Error::DuplicateKey {
                location,
                model: key.0,
                benchmark: key.1,
                instance: key.2,
            });
        }
        let inst = (record.benchmark_id.clone(), record.instance_id.clone());
        match self.instance_dims.get(&inst) {
            Some(dim) if *dim != record.dimension_id => {
                return Err(Error::DimensionConflict {
                    location,
                    benchmark: inst.0,
                    instance: inst.1,
                    first: dim.clone(),
                    second: record.dimension_id,
                });
            }
            Some(_) => {}
            None => {
                self.instance_dims.insert(inst, record.dimension_id.clone());
            }
        }
        self.keys.insert(key);
        self.records.push(record);
        Ok(())
    }

    /// Reads records from `source` and appends them to this set.
    pub fn ingest(&mut self, source: impl Read, format: Format) -> Result<()> {
        match parse_input(source, format)? {
            ParsedInput::Records(rows) => {
                for (loc, rec) in rows {
                    self.push(rec, loc)?;
                }
                Ok(())
            }
            ParsedInput::Aggregated(_) => Err(Error::Malformed {
                location: Location::Line(1),
                message:
                    "expected per-instance records, found aggregated model,benchmark,score data"
                        .into(),
            }),
        }
    }

    pub fn records(&self) -> &[EvalRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn benchmarks(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .records
            .iter()
            .map(|r| r.benchmark_id.as_str())
            .collect();
        set.into_iter().map(str::to_owned).collect()
    }

    /// Drops every record whose dimension or instance id is listed.
    pub fn excluding(&self, dimensions: &[String], instances: &[String]) -> RecordSet {
        let dims: HashSet<&str> = dimensions.iter().map(String::as_str).collect();
        let insts: HashSet<&str> = instances.iter().map(String::as_str).collect();
        let kept = self
            .records
            .iter()
            .filter(|r| {
                !dims.contains(r.dimension_id.as_str()) && !insts.contains(r.instance_id.as_str())
            })
            .cloned();
        // A subset of a valid set is valid.
        RecordSet::from_records(kept).expect("subset of a validated record set")
    }

    /// SHA-256 over the canonically sorted records, independent of input order
    /// and file layout.
    pub fn fingerprint(&self) -> String {
        let mut lines: Vec<String> = self
            .records
            .iter()
            .map(|r| {
                format!(
                    "{},{},{},{},{:016x}\n",
                    r.model_id,
                    r.benchmark_id,
                    r.dimension_id,
                    r.instance_id,
                    r.score.to_bits()
                )
            })
            .collect();
        lines.sort_unstable();
        let mut hasher = Sha256::new();
        for l in &lines {
            hasher.update(l.as_bytes());
        }
        hex_digest(&hasher.finalize())
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Result of reading one input source.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Records(Vec<(Location, EvalRecord)>),
    Aggregated(Vec<(Location, BenchmarkScore)>),
}

/// Parses per-instance records and validates them.
pub fn parse_records(source: impl Read, format: Format) -> Result<RecordSet> {
    let mut set = RecordSet::new();
    set.ingest(source, format)?;
    Ok(set)
}

/// Parses either a per-instance record source or a pre-aggregated
/// `model,benchmark,score` source, telling them apart by header (CSV) or keys
/// (JSON). Only syntax and field-level checks happen here.
pub fn parse_input(mut source: impl Read, format: Format) -> Result<ParsedInput> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    match format {
        Format::Csv => parse_csv(&bytes),
        Format::Json => parse_json(&bytes),
    }
}

fn parse_csv(bytes: &[u8]) -> Result<ParsedInput> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .quoting(false)
        .flexible(true)
        .from_reader(bytes);
    let mut rows = reader.byte_records();

    let header = match rows.next() {
        None => {
            return Err(Error::Malformed {
                location: Location::Line(1),
                message: "empty input, expected a header".into(),
            })
        }
        Some(h) => h.map_err(csv_error)?,
    };
    let header_fields: Vec<&[u8]> = header.iter().collect();
    let aggregated = if header_fields == RECORD_HEADER.map(str::as_bytes) {
        false
    } else if header_fields == AGGREGATED_HEADER.map(str::as_bytes) {
        true
    } else {
        return Err(Error::Malformed {
            location: Location::Line(header.position().map_or(1, |p| p.line())),
            message: format!(
                "unexpected header, expected '{}' or '{}'",
                RECORD_HEADER.join(","),
                AGGREGATED_HEADER.join(",")
            ),
        });
    };

    let mut records = Vec::new();
    let mut scores = Vec::new();
    for row in rows {
        let row = row.map_err(csv_error)?;
        let location = Location::Line(row.position().map_or(0, |p| p.line()));
        let expected = if aggregated { 3 } else { 5 };
        if row.len() != expected {
            return Err(Error::Malformed {
                location,
                message: format!("expected {expected} fields, found {}", row.len()),
            });
        }
        let mut fields = Vec::with_capacity(expected);
        for f in row.iter() {
            let s = std::str::from_utf8(f).map_err(|_| Error::Malformed {
                location: location.clone(),
                message: "invalid UTF-8".into(),
            })?;
            fields.push(s.trim());
        }
        let score_field = fields[expected - 1];
        let score: f64 = score_field.parse().map_err(|_| Error::Malformed {
            location: location.clone(),
            message: format!("score '{score_field}' is not a number"),
        })?;
        for (name, id) in ["model", "benchmark"].iter().zip(&fields) {
            check_id(&location, name, id)?;
        }
        check_score(&location, score)?;
        if aggregated {
            scores.push((
                location,
                BenchmarkScore {
                    model_id: fields[0].to_owned(),
                    benchmark_id: fields[1].to_owned(),
                    score,
                },
            ));
        } else {
            check_id(&location, "dimension", fields[2])?;
            check_id(&location, "instance", fields[3])?;
            records.push((
                location,
                EvalRecord {
                    model_id: fields[0].to_owned(),
                    benchmark_id: fields[1].to_owned(),
                    dimension_id: fields[2].to_owned(),
                    instance_id: fields[3].to_owned(),
                    score,
                },
            ));
        }
    }
    Ok(if aggregated {
        ParsedInput::Aggregated(scores)
    } else {
        ParsedInput::Records(records)
    })
}

fn csv_error(err: csv::Error) -> Error {
    let location = err
        .position()
        .map_or(Location::Unknown, |p| Location::Line(p.line()));
    Error::Malformed {
        location,
        message: err.to_string(),
    }
}

fn parse_json(bytes: &[u8]) -> Result<ParsedInput> {
    let values: Vec<serde_json::Value> =
        serde_json::from_slice(bytes).map_err(|e| Error::Malformed {
            location: Location::LineColumn(e.line(), e.column()),
            message: e.to_string(),
        })?;

    let mut records = Vec::new();
    let mut scores = Vec::new();
    for (i, value) in values.into_iter().enumerate() {
        let location = Location::Record(i);
        let obj = value.as_object().ok_or_else(|| Error::Malformed {
            location: location.clone(),
            message: "expected an object".into(),
        })?;
        let is_record = obj.contains_key("instance") || obj.contains_key("dimension");
        if i > 0 && is_record != scores.is_empty() {
            return Err(Error::Malformed {
                location,
                message: "mixes per-instance and aggregated records".into(),
            });
        }
        let malformed = |e: serde_json::Error| Error::Malformed {
            location: location.clone(),
            message: e.to_string(),
        };
        if is_record {
            let r: EvalRecord = serde_json::from_value(value).map_err(malformed)?;
            check_score(&location, r.score)?;
            records.push((location, r));
        } else {
            let s: BenchmarkScore = serde_json::from_value(value).map_err(malformed)?;
            check_id(&location, "model", &s.model_id)?;
            check_id(&location, "benchmark", &s.benchmark_id)?;
            check_score(&location, s.score)?;
            scores.push((location, s));
        }
    }
    Ok(if scores.is_empty() {
        ParsedInput::Records(records)
    } else {
        ParsedInput::Aggregated(scores)
    })
}

/// Dense models × columns score table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    row_ids: Vec<String>,
    col_ids: Vec<String>,
    /// Row-major, `row_ids.len() * col_ids.len()` cells.
    values: Vec<f64>,
    axis: AxisKind,
    dropped_models: Vec<String>,
}

impl ScoreMatrix {
    pub fn new(
        row_ids: Vec<String>,
        col_ids: Vec<String>,
        values: Vec<f64>,
        axis: AxisKind,
    ) -> Result<Self> {
        if values.len() != row_ids.len() * col_ids.len() {
            return Err(Error::LengthMismatch(
                values.len(),
                row_ids.len() * col_ids.len(),
            ));
        }
        for (what, ids) in [("row", &row_ids), ("column", &col_ids)] {
            let unique: HashSet<&String> = ids.iter().collect();
            if unique.len() != ids.len() {
                return Err(Error::InvalidArgument(format!("duplicate {what} id")));
            }
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::ScoreRange {
                location: Location::Unknown,
                score: *v,
            });
        }
        Ok(Self {
            row_ids,
            col_ids,
            values,
            axis,
            dropped_models: Vec::new(),
        })
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn col_ids(&self) -> &[String] {
        &self.col_ids
    }

    pub fn axis(&self) -> AxisKind {
        self.axis
    }

    pub fn n_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_ids.len()
    }

    /// Models removed at construction for incomplete coverage.
    pub fn dropped_models(&self) -> &[String] {
        &self.dropped_models
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.col_ids.len() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let c = self.col_ids.len();
        &self.values[row * c..(row + 1) * c]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n_rows()).map(|r| self.get(r, col)).collect()
    }

    pub fn row_means(&self) -> Vec<f64> {
        (0..self.n_rows())
            .map(|r| self.row(r).iter().sum::<f64>() / self.n_cols() as f64)
            .collect()
    }

    /// Keeps only the listed models, in canonical row order.
    pub fn restrict_rows(&self, ids: &[String]) -> Result<ScoreMatrix> {
        let wanted: HashSet<&str> = ids.iter().map(String::as_str).collect();
        let mut row_ids = Vec::new();
        let mut values = Vec::new();
        for (r, id) in self.row_ids.iter().enumerate() {
            if wanted.contains(id.as_str()) {
                row_ids.push(id.clone());
                values.extend_from_slice(self.row(r));
            }
        }
        if row_ids.len() != wanted.len() {
            return Err(Error::InvalidArgument(
                "selection names a model not in the matrix".into(),
            ));
        }
        Ok(ScoreMatrix {
            row_ids,
            col_ids: self.col_ids.clone(),
            values,
            axis: self.axis,
            dropped_models: self.dropped_models.clone(),
        })
    }
}

/// Aggregates records into a [`ScoreMatrix`] for one benchmark.
///
/// For [`AxisKind::Benchmark`] the `benchmark` argument is ignored and every
/// benchmark in `records` becomes a column.
pub fn build_matrix(records: &RecordSet, benchmark: &str, axis: AxisKind) -> Result<ScoreMatrix> {
    if axis == AxisKind::Benchmark {
        return BenchmarkTable::from_records(records).to_matrix();
    }
    let table = InstanceTable::new(records, benchmark)?;
    let (complete, dropped) = table.complete_models();
    if complete.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let instances: Vec<&str> = table.instance_dims.keys().copied().collect();

    let (col_ids, values) = match axis {
        AxisKind::Instance => {
            let mut values = Vec::with_capacity(complete.len() * instances.len());
            for m in &complete {
                let scores = &table.scores[*m];
                values.extend(instances.iter().map(|q| scores[*q]));
            }
            (instances.iter().map(|s| (*s).to_owned()).collect(), values)
        }
        AxisKind::Dimension => {
            let mut dims: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
            for (q, d) in &table.instance_dims {
                dims.entry(*d).or_default().push(*q);
            }
            let mut values = Vec::with_capacity(complete.len() * dims.len());
            for m in &complete {
                let scores = &table.scores[*m];
                for (d, qs) in &dims {
                    if qs.is_empty() {
                        return Err(Error::EmptyDimension((*d).to_owned()));
                    }
                    values.push(qs.iter().map(|q| scores[*q]).sum::<f64>() / qs.len() as f64);
                }
            }
            (dims.keys().map(|d| (*d).to_owned()).collect(), values)
        }
        AxisKind::Benchmark => unreachable!(),
    };
    let mut matrix = ScoreMatrix::new(
        complete.iter().map(|m| (*m).to_owned()).collect(),
        col_ids,
        values,
        axis,
    )?;
    matrix.dropped_models = dropped;
    Ok(matrix)
}

/// Per-instance scores of one benchmark, keyed canonically.
struct InstanceTable<'a> {
    scores: BTreeMap<&'a str, BTreeMap<&'a str, f64>>,
    instance_dims: BTreeMap<&'a str, &'a str>,
}

impl<'a> InstanceTable<'a> {
    fn new(records: &'a RecordSet, benchmark: &str) -> Result<Self> {
        let mut scores: BTreeMap<&str, BTreeMap<&str, f64>> = BTreeMap::new();
        let mut instance_dims = BTreeMap::new();
        for r in records
            .records()
            .iter()
            .filter(|r| r.benchmark_id == benchmark)
        {
            scores
                .entry(r.model_id.as_str())
                .or_default()
                .insert(r.instance_id.as_str(), r.score);
            instance_dims.insert(r.instance_id.as_str(), r.dimension_id.as_str());
        }
        if scores.is_empty() {
            return Err(Error::UnknownBenchmark(benchmark.to_owned()));
        }
        Ok(Self {
            scores,
            instance_dims,
        })
    }

    /// Models covering every instance, and the ids of those that do not.
    fn complete_models(&self) -> (Vec<&'a str>, Vec<String>) {
        let total = self.instance_dims.len();
        let mut complete = Vec::new();
        let mut dropped = Vec::new();
        for (m, s) in &self.scores {
            if s.len() == total {
                complete.push(*m);
            } else {
                dropped.push((*m).to_owned());
            }
        }
        (complete, dropped)
    }

    fn overall(&self, model: &str) -> f64 {
        // Instance order is canonical, so the sum is reproducible.
        let s = &self.scores[model];
        s.values().sum::<f64>() / s.len() as f64
    }
}

/// Benchmark-level scores per model, from aggregated records and/or
/// leaderboard-style `model,benchmark,score` inputs.
#[derive(Debug, Clone, Default)]
pub struct BenchmarkTable {
    scores: BTreeMap<String, BTreeMap<String, f64>>,
    /// Models seen on some benchmark without complete instance coverage.
    incomplete: BTreeSet<String>,
}

impl BenchmarkTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Micro-averaged benchmark score for every model with complete instance
    /// coverage of that benchmark.
    pub fn from_records(records: &RecordSet) -> Self {
        let mut table = BenchmarkTable::new();
        for b in records.benchmarks() {
            let Ok(inst) = InstanceTable::new(records, &b) else {
                continue;
            };
            let (complete, dropped) = inst.complete_models();
            for m in complete {
                table
                    .scores
                    .entry(m.to_owned())
                    .or_default()
                    .insert(b.clone(), inst.overall(m));
            }
            table.incomplete.extend(dropped);
        }
        table
    }

    pub fn insert(&mut self, score: BenchmarkScore, location: Location) -> Result<()> {
        check_score(&location, score.score)?;
        let row = self.scores.entry(score.model_id.clone()).or_default();
        if row.contains_key(&score.benchmark_id) {
            return Err(Error::DuplicateKey {
                location,
                model: score.model_id,
                benchmark: score.benchmark_id,
                instance: "*".into(),
            });
        }
        row.insert(score.benchmark_id, score.score);
        Ok(())
    }

    /// Adds every score of `other`; a (model, benchmark) present in both is an error.
    pub fn merge(&mut self, other: BenchmarkTable) -> Result<()> {
        for (model, row) in other.scores {
            for (benchmark, score) in row {
                self.insert(
                    BenchmarkScore {
                        model_id: model.clone(),
                        benchmark_id: benchmark,
                        score,
                    },
                    Location::Unknown,
                )?;
            }
        }
        self.incomplete.extend(other.incomplete);
        Ok(())
    }

    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        for (m, row) in &self.scores {
            for (b, s) in row {
                hasher.update(format!("{m},{b},{:016x}\n", s.to_bits()).as_bytes());
            }
        }
        hex_digest(&hasher.finalize())
    }

    pub fn to_matrix(&self) -> Result<ScoreMatrix> {
        let benchmarks: BTreeSet<&String> = self.scores.values().flat_map(|r| r.keys()).collect();
        let mut rows = Vec::new();
        let mut values = Vec::new();
        let mut dropped: BTreeSet<String> = self.incomplete.clone();
        for (m, row) in &self.scores {
            if row.len() == benchmarks.len() {
                rows.push(m.clone());
                values.extend(row.values().copied());
                dropped.remove(m);
            } else {
                dropped.insert(m.clone());
            }
        }
        if rows.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        let mut matrix = ScoreMatrix::new(
            rows,
            benchmarks.into_iter().cloned().collect(),
            values,
            AxisKind::Benchmark,
        )?;
        matrix.dropped_models = dropped.into_iter().collect();
        Ok(matrix)
    }
}

/// Which models take part in an analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    All,
    TopK(usize),
    BottomK(usize),
}

impl fmt::Display for SelectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionMode::All => f.write_str("all"),
            SelectionMode::TopK(k) => write!(f, "top:{k}"),
            SelectionMode::BottomK(k) => write!(f, "bottom:{k}"),
        }
    }
}

impl FromStr for SelectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "invalid selection '{s}', expected all, top:K or bottom:K"
            ))
        };
        if s == "all" {
            return Ok(SelectionMode::All);
        }
        let (kind, k) = s.split_once(':').ok_or_else(bad)?;
        let k: usize = k.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(Error::InvalidArgument(
                "selection size k must be positive".into(),
            ));
        }
        match kind {
            "top" => Ok(SelectionMode::TopK(k)),
            "bottom" => Ok(SelectionMode::BottomK(k)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for SelectionMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SelectionMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The outcome of a Top-K / Bottom-K / All selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSelection {
    pub mode: SelectionMode,
    /// Selected models, best first for `All` and `TopK`, worst first for `BottomK`.
    pub selected_ids: Vec<String>,
    /// Overall score of each selected model, parallel to `selected_ids`.
    pub ordering_scores: Vec<f64>,
}

impl ModelSelection {
    /// Selects from `(model, overall score)` pairs. Ties break by model id.
    pub fn from_scores(ids: &[String], scores: &[f64], mode: SelectionMode) -> Result<Self> {
        if ids.len() != scores.len() {
            return Err(Error::LengthMismatch(ids.len(), scores.len()));
        }
        let mut order: Vec<usize> = (0..ids.len()).collect();
        let by_id = |a: &usize, b: &usize| ids[*a].cmp(&ids[*b]);
        let (ascending, k) = match mode {
            SelectionMode::All => (false, ids.len()),
            SelectionMode::TopK(k) => (false, k),
            SelectionMode::BottomK(k) => (true, k),
        };
        if k == 0 {
            return Err(Error::InvalidArgument(
                "selection size k must be positive".into(),
            ));
        }
        order.sort_by(|a, b| {
            let c = scores[*a].total_cmp(&scores[*b]);
            let c = if ascending { c } else { c.reverse() };
            c.then_with(|| by_id(a, b))
        });
        order.truncate(k.min(ids.len()));
        Ok(ModelSelection {
            mode,
            selected_ids: order.iter().map(|&i| ids[i].clone()).collect(),
            ordering_scores: order.iter().map(|&i| scores[i]).collect(),
        })
    }
}

/// Selects models by their overall score, the row mean over all columns of
/// `matrix`, and restricts the matrix to them.
///
/// For instance-axis matrices this is the micro-averaged benchmark accuracy.
/// The restricted matrix keeps canonical row order and all columns.
pub fn select_models(
    matrix: &ScoreMatrix,
    mode: SelectionMode,
) -> Result<(ModelSelection, ScoreMatrix)> {
    let selection = ModelSelection::from_scores(matrix.row_ids(), &matrix.row_means(), mode)?;
    let restricted = matrix.restrict_rows(&selection.selected_ids)?;
    Ok((selection, restricted))
}
