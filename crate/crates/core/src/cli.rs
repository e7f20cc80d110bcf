//! The `benchred` command line.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data errors
//! (ingestion failures, invariant violations, too little data).

use std::ffi::OsString;
use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cross::{self, DEFAULT_ANCHOR_THRESHOLD, DEFAULT_DISTINCT_THRESHOLD};
use crate::datamodel::{
    build_matrix, hex_digest, parse_input, select_models, AxisKind, BenchmarkTable, Format,
    ParsedInput, RecordSet, SelectionMode,
};
use crate::dimension::{self, DEFAULT_FLAG_THRESHOLD};
use crate::error::Error;
use crate::instance::{self, SamplingPlan, DEFAULT_RATIO_SPEC, DEFAULT_THRESHOLD, DEFAULT_TRIALS};
use crate::metrics::Metric;
use crate::report::svg::{bar_svg, curve_svg, heatmap_svg, HeatmapOptions};
use crate::report::{self, CrossFragment, CurveFragment, Fragment, MatrixFragment};
use crate::synth::{self, SynthConfig};

/// Environment variable capping worker threads; 0 or unset means automatic.
pub const THREADS_ENV: &str = "RED_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "benchred",
    version,
    about = "Redundancy analysis for model-evaluation benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension redundancy of one benchmark: heatmap, bars and a JSON fragment.
    Dims(DimsArgs),
    /// Instance redundancy curve from repeated random subsampling.
    Instances(InstancesArgs),
    /// Cross-benchmark redundancy and anchor/distinct classification.
    Cross(CrossArgs),
    /// Generate synthetic records from a JSON generator description.
    Synth(SynthArgs),
    /// Merge fragment files into a single report with recommendations.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Metrics(&'static [Metric]);

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == Metric::ALL.len() {
            f.write_str("all")
        } else {
            f.write_str(self.0[0].name())
        }
    }
}

fn parse_metrics(s: &str) -> Result<Metrics, String> {
    match s {
        "all" => Ok(Metrics(&Metric::ALL)),
        "srcc" => Ok(Metrics(&[Metric::Srcc])),
        "plcc" => Ok(Metrics(&[Metric::Plcc])),
        "r2" => Ok(Metrics(&[Metric::R2])),
        _ => Err(format!(
            "unknown metric '{s}', expected srcc, plcc, r2 or all"
        )),
    }
}

fn parse_selection(s: &str) -> Result<SelectionMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_unit_threshold(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} outside (0, 1]"))
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Record files (CSV or .json).
    #[arg(long, num_args = 1.., required = true)]
    input: Vec<PathBuf>,
    /// srcc, plcc, r2 or all.
    #[arg(long, default_value = "srcc", value_parser = parse_metrics)]
    metric: Metrics,
    /// all, top:K or bottom:K.
    #[arg(long, default_value = "all", value_parser = parse_selection)]
    select: SelectionMode,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct DimsArgs {
    #[command(flatten)]
    common: InputArgs,
    /// Benchmark to analyse; optional when the input holds only one.
    #[arg(long)]
    benchmark: Option<String>,
    /// Pairs at or above this correlation are flagged.
    #[arg(long, default_value_t = DEFAULT_FLAG_THRESHOLD, value_parser = parse_unit_threshold)]
    flag_threshold: f64,
}

#[derive(Debug, Args)]
struct InstancesArgs {
    #[command(flatten)]
    common: InputArgs,
    #[arg(long)]
    benchmark: Option<String>,
    /// Percent grid, e.g. `1,5:100:5`.
    #[arg(long, default_value = DEFAULT_RATIO_SPEC)]
    ratios: String,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_unit_threshold)]
    threshold: f64,
}

#[derive(Debug, Args)]
struct CrossArgs {
    #[command(flatten)]
    common: InputArgs,
    #[arg(long, default_value_t = DEFAULT_ANCHOR_THRESHOLD)]
    anchor: f64,
    #[arg(long, default_value_t = DEFAULT_DISTINCT_THRESHOLD)]
    distinct: f64,
    /// Comma-separated dimension ids dropped before aggregation.
    #[arg(long, value_delimiter = ',')]
    exclude_dims: Vec<String>,
    /// Comma-separated instance ids dropped before aggregation.
    #[arg(long, value_delimiter = ',')]
    exclude_instances: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_FLAG_THRESHOLD, value_parser = parse_unit_threshold)]
    flag_threshold: f64,
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Generator description (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed in the description.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Directories holding `*.fragment.json` files.
    #[arg(long, num_args = 1.., required = true)]
    fragments: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn at(path: &Path, err: impl fmt::Display) -> CliError {
        CliError::Data(format!("{}: {err}", path.display()))
    }
}

type CliResult<T> = Result<T, CliError>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = threads_from_env().and_then(|threads| match threads {
        0 => dispatch(cli.command),
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(cli.command))),
    });
    match result {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Usage(format!("{THREADS_ENV}='{v}' is not a non-negative integer"))
        }),
    }
}

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Dims(a) => run_dims(a),
        Command::Instances(a) => run_instances(a),
        Command::Cross(a) => run_cross(a),
        Command::Synth(a) => run_synth(a),
        Command::Report(a) => run_report(a),
    }
}

#[derive(Debug, Serialize)]
struct InputHash {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Manifest<A: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    arguments: A,
    inputs: Vec<InputHash>,
    outputs: Vec<String>,
}

struct Loaded {
    records: RecordSet,
    aggregated: BenchmarkTable,
    has_aggregated: bool,
    hashes: Vec<InputHash>,
}

/// `path` with `/` separators, so manifests read the same on every platform.
fn portable(path: &Path) -> String {
    let text = path.to_string_lossy();
    if cfg!(windows) {
        text.replace('\\', "/")
    } else {
        text.into_owned()
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex_digest(&Sha256::digest(bytes))
}

fn load_inputs(paths: &[PathBuf]) -> CliResult<Loaded> {
    let mut loaded = Loaded {
        records: RecordSet::new(),
        aggregated: BenchmarkTable::new(),
        has_aggregated: false,
        hashes: Vec::new(),
    };
    for path in paths {
        let bytes = std::fs::read(path).map_err(|e| CliError::at(path, e))?;
        loaded.hashes.push(InputHash {
            path: portable(path),
            sha256: sha256_hex(&bytes),
        });
        match parse_input(bytes.as_slice(), Format::from_path(path))
            .map_err(|e| CliError::at(path, e))?
        {
            ParsedInput::Records(rows) => {
                for (loc, rec) in rows {
                    loaded
                        .records
                        .push(rec, loc)
                        .map_err(|e| CliError::at(path, e))?;
                }
            }
            ParsedInput::Aggregated(rows) => {
                loaded.has_aggregated = true;
                for (loc, score) in rows {
                    loaded
                        .aggregated
                        .insert(score, loc)
                        .map_err(|e| CliError::at(path, e))?;
                }
            }
        }
    }
    Ok(loaded)
}

fn input_label(paths: &[PathBuf]) -> String {
    paths
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Loads per-instance inputs and resolves the benchmark to analyse.
fn load_benchmark(paths: &[PathBuf], benchmark: Option<String>) -> CliResult<(Loaded, String)> {
    let loaded = load_inputs(paths)?;
    let label = input_label(paths);
    if loaded.has_aggregated {
        return Err(CliError::Data(format!(
            "{label}: aggregated model,benchmark,score input is only accepted by `cross`"
        )));
    }
    let benchmarks = loaded.records.benchmarks();
    let benchmark = match benchmark {
        Some(b) => b,
        None if benchmarks.len() == 1 => benchmarks[0].clone(),
        None if benchmarks.is_empty() => {
            return Err(CliError::Data(format!("{label}: no records")))
        }
        None => {
            return Err(CliError::Usage(format!(
                "--benchmark is required when the input holds several benchmarks ({})",
                benchmarks.join(", ")
            )))
        }
    };
    Ok((loaded, benchmark))
}

fn warn_dropped(dropped: &[String]) {
    if !dropped.is_empty() {
        eprintln!(
            "warning: dropped {} model(s) without complete coverage: {}",
            dropped.len(),
            dropped.join(", ")
        );
    }
}

fn slug(id: &str) -> String {
    id.chars().map(|c| if c == '/' { '_' } else { c }).collect()
}

fn selection_tag(mode: SelectionMode) -> String {
    match mode {
        SelectionMode::All => "all".into(),
        SelectionMode::TopK(k) => format!("top{k}"),
        SelectionMode::BottomK(k) => format!("bottom{k}"),
    }
}

/// Writes `contents` to `dir/name` through a temporary file and a rename.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> CliResult<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::at(dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::at(dir, e))?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file()
            .set_permissions(std::fs::Permissions::from_mode(0o644))
            .map_err(|e| CliError::at(dir, e))?;
    }
    let target = dir.join(name);
    tmp.persist(&target)
        .map_err(|e| CliError::at(&target, e.error))?;
    Ok(())
}

struct Outputs {
    dir: PathBuf,
    written: Vec<String>,
}

impl Outputs {
    fn new(dir: &Path) -> CliResult<Self> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::at(dir, e))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: String, contents: &str) -> CliResult<()> {
        write_atomic(&self.dir, &name, contents.as_bytes())?;
        self.written.push(name);
        Ok(())
    }

    fn finish<A: Serialize>(
        self,
        command: &'static str,
        arguments: A,
        inputs: Vec<InputHash>,
    ) -> CliResult<()> {
        let manifest = Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            arguments,
            inputs,
            outputs: self.written,
        };
        write_atomic(&self.dir, "run.json", report::to_json(&manifest).as_bytes())
    }
}

fn data(label: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::Data(format!("{label}: {e}"))
}

#[derive(Serialize)]
struct DimsManifest<'a> {
    benchmark: &'a str,
    metric: String,
    select: SelectionMode,
    flag_threshold: f64,
}

fn run_dims(args: DimsArgs) -> CliResult<()> {
    let (loaded, benchmark) = load_benchmark(&args.common.input, args.benchmark)?;
    let label = format!(
        "{}: benchmark '{benchmark}'",
        input_label(&args.common.input)
    );
    let err = data(&label);
    let inst = build_matrix(&loaded.records, &benchmark, AxisKind::Instance).map_err(&err)?;
    let dims = build_matrix(&loaded.records, &benchmark, AxisKind::Dimension).map_err(&err)?;
    warn_dropped(inst.dropped_models());
    let (selection, _) = select_models(&inst, args.common.select).map_err(&err)?;
    let fingerprint = loaded.records.fingerprint();

    let mut out = Outputs::new(&args.common.out_dir)?;
    for &metric in args.common.metric.0 {
        let matrix = dimension::pairwise_matrix(&dims, metric, &selection).map_err(&err)?;
        let fragment = MatrixFragment::new(
            &matrix,
            Some(benchmark.clone()),
            fingerprint.clone(),
            args.flag_threshold,
            inst.dropped_models().to_vec(),
        );
        let stem = format!(
            "dims_{}_{}_{}",
            slug(&benchmark),
            metric,
            selection_tag(args.common.select)
        );
        let title = format!(
            "{benchmark} {} {}",
            metric.name().to_uppercase(),
            args.common.select
        );
        let heat = HeatmapOptions {
            show_values: true,
            title: Some(title.clone()),
        };
        out.write(
            format!("{stem}_heatmap.svg"),
            &heatmap_svg(&fragment, &heat),
        )?;
        out.write(
            format!("{stem}_bars.svg"),
            &bar_svg(&fragment, Some(&title)),
        )?;
        out.write(format!("{stem}_matrix.csv"), &report::matrix_csv(&fragment))?;
        out.write(
            format!("{stem}.fragment.json"),
            &report::to_json(&Fragment::Dimension(fragment)),
        )?;
    }
    out.finish(
        "dims",
        DimsManifest {
            benchmark: &benchmark,
            metric: args.common.metric.to_string(),
            select: args.common.select,
            flag_threshold: args.flag_threshold,
        },
        loaded.hashes,
    )
}

#[derive(Serialize)]
struct InstancesManifest<'a> {
    benchmark: &'a str,
    metric: String,
    select: SelectionMode,
    ratios_spec: &'a str,
    ratios: &'a [f64],
    trials: usize,
    seed: u64,
    threshold: f64,
}

fn run_instances(args: InstancesArgs) -> CliResult<()> {
    let ratios =
        instance::parse_ratio_spec(&args.ratios).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let (loaded, benchmark) = load_benchmark(&args.common.input, args.benchmark)?;
    let label = format!(
        "{}: benchmark '{benchmark}'",
        input_label(&args.common.input)
    );
    let err = data(&label);
    let inst = build_matrix(&loaded.records, &benchmark, AxisKind::Instance).map_err(&err)?;
    warn_dropped(inst.dropped_models());
    let (selection, _) = select_models(&inst, args.common.select).map_err(&err)?;
    let fingerprint = loaded.records.fingerprint();

    let mut out = Outputs::new(&args.common.out_dir)?;
    for &metric in args.common.metric.0 {
        let plan = SamplingPlan::new(ratios.clone(), args.trials, args.seed, metric)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let curve = instance::curve(&inst, &plan, &selection, args.threshold).map_err(&err)?;
        let fragment = CurveFragment::new(
            &curve,
            benchmark.clone(),
            fingerprint.clone(),
            inst.dropped_models().to_vec(),
        );
        let stem = format!(
            "instances_{}_{}_{}",
            slug(&benchmark),
            metric,
            selection_tag(args.common.select)
        );
        out.write(format!("{stem}_curve.svg"), &curve_svg(&fragment))?;
        out.write(format!("{stem}_curve.csv"), &report::curve_csv(&fragment))?;
        out.write(
            format!("{stem}.fragment.json"),
            &report::to_json(&Fragment::Instance(fragment)),
        )?;
    }
    out.finish(
        "instances",
        InstancesManifest {
            benchmark: &benchmark,
            metric: args.common.metric.to_string(),
            select: args.common.select,
            ratios_spec: &args.ratios,
            ratios: &ratios,
            trials: args.trials,
            seed: args.seed,
            threshold: args.threshold,
        },
        loaded.hashes,
    )
}

#[derive(Serialize)]
struct CrossManifest<'a> {
    metric: String,
    select: SelectionMode,
    anchor: f64,
    distinct: f64,
    exclude_dims: &'a [String],
    exclude_instances: &'a [String],
    flag_threshold: f64,
}

fn run_cross(mut args: CrossArgs) -> CliResult<()> {
    for list in [&mut args.exclude_dims, &mut args.exclude_instances] {
        list.retain(|id| !id.trim().is_empty());
        list.iter_mut().for_each(|id| *id = id.trim().to_owned());
    }
    if args.distinct.partial_cmp(&args.anchor) != Some(std::cmp::Ordering::Less) {
        return Err(CliError::Usage(format!(
            "--distinct ({}) must be below --anchor ({})",
            args.distinct, args.anchor
        )));
    }
    let loaded = load_inputs(&args.common.input)?;
    let label = input_label(&args.common.input);
    let err = data(&label);
    let records = loaded
        .records
        .excluding(&args.exclude_dims, &args.exclude_instances);
    let mut table = BenchmarkTable::from_records(&records);
    table.merge(loaded.aggregated.clone()).map_err(&err)?;
    let matrix = table.to_matrix().map_err(&err)?;
    warn_dropped(matrix.dropped_models());
    let (selection, _) = select_models(&matrix, args.common.select).map_err(&err)?;

    let fingerprint = if loaded.has_aggregated {
        sha256_hex(
            format!(
                "{}\n{}",
                records.fingerprint(),
                loaded.aggregated.fingerprint()
            )
            .as_bytes(),
        )
    } else {
        records.fingerprint()
    };

    let mut out = Outputs::new(&args.common.out_dir)?;
    for &metric in args.common.metric.0 {
        let rm = cross::cross_matrix(&matrix, metric, &selection).map_err(&err)?;
        let fragment = CrossFragment::new(
            &rm,
            fingerprint.clone(),
            args.flag_threshold,
            matrix.dropped_models().to_vec(),
            args.anchor,
            args.distinct,
            (args.exclude_dims.clone(), args.exclude_instances.clone()),
        )
        .map_err(|e| CliError::Usage(e.to_string()))?;
        let stem = format!("cross_{}_{}", metric, selection_tag(args.common.select));
        let title = format!(
            "cross-benchmark {} {}",
            metric.name().to_uppercase(),
            args.common.select
        );
        let heat = HeatmapOptions {
            show_values: true,
            title: Some(title.clone()),
        };
        out.write(
            format!("{stem}_heatmap.svg"),
            &heatmap_svg(&fragment.matrix, &heat),
        )?;
        out.write(
            format!("{stem}_bars.svg"),
            &bar_svg(&fragment.matrix, Some(&title)),
        )?;
        out.write(
            format!("{stem}_matrix.csv"),
            &report::matrix_csv(&fragment.matrix),
        )?;
        out.write(
            format!("{stem}.fragment.json"),
            &report::to_json(&Fragment::CrossBenchmark(fragment)),
        )?;
    }
    out.finish(
        "cross",
        CrossManifest {
            metric: args.common.metric.to_string(),
            select: args.common.select,
            anchor: args.anchor,
            distinct: args.distinct,
            exclude_dims: &args.exclude_dims,
            exclude_instances: &args.exclude_instances,
            flag_threshold: args.flag_threshold,
        },
        loaded.hashes,
    )
}

/// Parent directory and file name of an output path.
fn split_out(path: &Path) -> CliResult<(PathBuf, String)> {
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| CliError::Usage(format!("{}: not a file path", path.display())))?
        .to_owned();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(|e| CliError::at(&dir, e))?;
    Ok((dir, name))
}

fn write_side_manifest<A: Serialize>(
    dir: &Path,
    name: &str,
    command: &'static str,
    arguments: A,
    inputs: Vec<InputHash>,
) -> CliResult<()> {
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command,
        arguments,
        inputs,
        outputs: vec![name.to_owned()],
    };
    write_atomic(
        dir,
        &format!("{name}.run.json"),
        report::to_json(&manifest).as_bytes(),
    )
}

#[derive(Serialize)]
struct SynthManifest {
    seed: u64,
    n_models: usize,
    records: usize,
}

fn run_synth(args: SynthArgs) -> CliResult<()> {
    let bytes = std::fs::read(&args.spec).map_err(|e| CliError::at(&args.spec, e))?;
    let config: SynthConfig =
        serde_json::from_slice(&bytes).map_err(|e| CliError::at(&args.spec, e))?;
    let spec = config
        .resolve(args.seed)
        .map_err(|e| CliError::at(&args.spec, e))?;
    let records = synth::generate(&spec).map_err(|e| CliError::at(&args.spec, e))?;
    let (dir, name) = split_out(&args.out)?;
    write_atomic(&dir, &name, synth::to_csv(&records).as_bytes())?;
    write_side_manifest(
        &dir,
        &name,
        "synth",
        SynthManifest {
            seed: spec.seed,
            n_models: spec.n_models,
            records: records.len(),
        },
        vec![InputHash {
            path: portable(&args.spec),
            sha256: sha256_hex(&bytes),
        }],
    )
}

fn run_report(args: ReportArgs) -> CliResult<()> {
    let mut fragments = Vec::new();
    let mut inputs = Vec::new();
    for dir in &args.fragments {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| CliError::at(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.ends_with(".fragment.json"))
            })
            .collect();
        files.sort();
        for file in files {
            let bytes = std::fs::read(&file).map_err(|e| CliError::at(&file, e))?;
            let fragment: Fragment =
                serde_json::from_slice(&bytes).map_err(|e| CliError::at(&file, e))?;
            inputs.push(InputHash {
                path: portable(&file),
                sha256: sha256_hex(&bytes),
            });
            fragments.push(fragment);
        }
    }
    let report = report::emit_report(fragments)
        .map_err(|e| CliError::Data(format!("{}: {e}", input_label(&args.fragments))))?;
    let (dir, name) = split_out(&args.out)?;
    write_atomic(&dir, &name, report.to_json().as_bytes())?;
    #[derive(Serialize)]
    struct ReportManifest {
        fragments: usize,
    }
    write_side_manifest(
        &dir,
        &name,
        "report",
        ReportManifest {
            fragments: report.fragments.len(),
        },
        inputs,
    )
}
