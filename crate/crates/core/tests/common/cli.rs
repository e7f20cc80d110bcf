//! Helpers for driving the compiled binary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_benchred");

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Runs the binary in `dir` with an explicit worker count (`None` leaves the
/// environment variable unset).
pub fn run_in(dir: &Path, args: &[&str], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.current_dir(dir).args(args).env_remove("RED_THREADS");
    if let Some(n) = threads {
        cmd.env("RED_THREADS", n.to_string());
    }
    cmd.output().expect("binary runs")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn ok(out: Output, what: &str) {
    assert_eq!(out.status.code(), Some(0), "{what}: {}", stderr(&out));
}

/// dims + instances + cross + report on the frozen fixture, seed 42, all
/// paths relative to `root`.
pub fn full_pipeline(root: &Path, threads: usize) {
    std::fs::copy(fixture("pipeline.csv"), root.join("pipeline.csv")).unwrap();
    let t = Some(threads);
    let input = ["--input", "pipeline.csv"];
    let with = |rest: &[&'static str]| -> Vec<&'static str> {
        let mut v = vec![rest[0]];
        v.extend_from_slice(&input);
        v.extend_from_slice(&rest[1..]);
        v
    };
    ok(
        run_in(
            root,
            &with(&[
                "dims",
                "--benchmark",
                "mmb",
                "--metric",
                "all",
                "--out-dir",
                "dims",
            ]),
            t,
        ),
        "dims",
    );
    ok(
        run_in(
            root,
            &with(&[
                "dims",
                "--benchmark",
                "mmb",
                "--select",
                "bottom:15",
                "--out-dir",
                "dims",
            ]),
            t,
        ),
        "dims bottom",
    );
    ok(
        run_in(
            root,
            &with(&[
                "instances",
                "--benchmark",
                "mmb",
                "--seed",
                "42",
                "--out-dir",
                "instances",
            ]),
            t,
        ),
        "instances",
    );
    ok(
        run_in(
            root,
            &with(&["cross", "--metric", "all", "--out-dir", "cross"]),
            t,
        ),
        "cross",
    );
    ok(
        run_in(
            root,
            &[
                "report",
                "--fragments",
                "dims",
                "instances",
                "cross",
                "--out",
                "report.json",
            ],
            t,
        ),
        "report",
    );
}

/// Every file below `root`, keyed by `/`-separated relative path.
pub fn snapshot(root: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(base: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(base, &path, out);
            } else {
                let rel = path.strip_prefix(base).unwrap();
                let key = rel
                    .components()
                    .map(|c| c.as_os_str().to_string_lossy())
                    .collect::<Vec<_>>()
                    .join("/");
                out.insert(key, std::fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}
