use std::path::{Path, PathBuf};
use std::process::Command;

use nsf_relent::scenario::{plot_csv, run, PlotOptions, ScenarioConfig};
use nsf_relent::Error;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nsf-relent"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("scenario.conf");
    std::fs::write(&path, text).unwrap();
    path
}

const SHORT_TWIN: &str = "scenario.kind=twin\ngrid.n=32\ntime.t_end=0.2\n";

#[test]
fn twin_with_zero_perturbation_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHORT_TWIN);
    let out = dir.path().join("out");
    let status = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let gronwall = std::fs::read_to_string(out.join("gronwall.txt")).unwrap();
    assert!(gronwall.contains("verdict=identically zero at resolution"));
    assert!(gronwall.contains("c3="));
    assert!(gronwall.contains("floor="));
    let header = std::fs::read_to_string(out.join("timeseries.csv")).unwrap();
    assert!(header.starts_with("t,I,kinetic,entropy_part,dissipation_acc,margin,"));
    let manifest = std::fs::read_to_string(out.join("manifest.txt")).unwrap();
    assert!(manifest.contains("config_sha256="));
    assert!(manifest.contains("model.mu0="));
    assert!(manifest.contains(&format!("version={}", env!("CARGO_PKG_VERSION"))));
}

#[test]
fn failed_check_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // the ideal gas violates the third-law hypotheses
    let cfg = write_config(dir.path(), "model.family=boltzmann\naudit.samples=500\n");
    let output = bin()
        .args(["audit", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("audit"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stdout).contains("FAIL audit"));
}

#[test]
fn default_audit_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "audit.samples=2000\n");
    let status = bin()
        .args(["audit", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("audit.txt")).unwrap();
    assert!(text.starts_with("verdict=pass"));
}

#[test]
fn execution_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SHORT_TWIN);
    let output = bin()
        .args(["run", "--config"])
        .arg(&cfg)
        .args(["--override", "grid.n=abc"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("grid.n"));

    let status = bin().args(["run", "--config", "/nonexistent/x.conf"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let status = bin().arg("frobnicate").status().unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ScenarioConfig::from_str_with_overrides(SHORT_TWIN, &["scenario.eps=0.01".into()]).unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let first = run(&cfg, Some(&a)).unwrap();
    run(&cfg, Some(&b)).unwrap();
    for file in &first.files {
        let name = file.file_name().unwrap();
        let (x, y) = (std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap());
        assert!(x == y, "{name:?} differs");
    }
}

#[test]
fn plot_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("relent.svg");
    let opts = PlotOptions {
        log_y: true,
        title: "relative entropy, eps = 0.01".into(),
    };
    let cols = ["I", "kinetic", "entropy_part"].map(String::from);
    plot_csv(&data("twin_timeseries.csv"), "t", &cols, &out, &opts).unwrap();
    let golden = std::fs::read_to_string(data("golden_relent.svg")).unwrap();
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden);
}

#[test]
fn plot_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let csv = data("twin_timeseries.csv");
    let cfg = write_config(dir.path(), &format!("plot.csv={}\nplot.y=margin\n", csv.display()));
    let status = bin()
        .args(["plot", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("twin_timeseries.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains(">margin</text>"));
    assert!(svg.contains(">t</text>"));
}

#[test]
fn plot_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let opts = PlotOptions::default();
    let err = plot_csv(&data("twin_timeseries.csv"), "t", &["nope".into()], &out, &opts).unwrap_err();
    assert!(matches!(&err, Error::MissingColumn(c) if c == "nope"));
    assert!(!out.exists());

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "t,I\n").unwrap();
    let err = plot_csv(&empty, "t", &["I".into()], &out, &opts).unwrap_err();
    assert!(matches!(err, Error::EmptyData(_)));
    assert!(!out.exists());
}
