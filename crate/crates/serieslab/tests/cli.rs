use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn serieslab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serieslab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SERIESLAB_THREADS")
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn sweep_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = serieslab(
        &[
            "sweep",
            "--process",
            "fair-coin",
            "--length",
            "200000",
            "--n",
            "1..4",
            "--eps",
            "0.05,0.1",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["config.json", "sweep.json", "sweep.csv", "blocks.csv"] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    // Header plus one row per length and eps.
    assert_eq!(csv.lines().count(), 1 + 4 * 2);
    let echoed: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(echoed["command"], "sweep");
}

#[test]
fn config_replay_is_byte_identical() {
    let first = tempfile::tempdir().unwrap();
    let o = serieslab(
        &[
            "sweep",
            "--process",
            "markov:0.8,0.2;0.4,0.6",
            "--length",
            "100000",
            "--n",
            "2,3",
            "--seed",
            "5",
        ],
        first.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let second = tempfile::tempdir().unwrap();
    let config = first.path().join("config.json");
    let o = serieslab(&["--config", config.to_str().unwrap()], second.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["config.json", "sweep.json", "sweep.csv", "blocks.csv"] {
        assert_eq!(
            fs::read(first.path().join(name)).unwrap(),
            fs::read(second.path().join(name)).unwrap(),
            "{name} differs"
        );
    }
}

#[test]
fn thread_count_from_environment() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["unbiased", "--length", "100000", "--n", "1..5"];
    let o = serieslab(&args, a.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_serieslab"))
        .args(args)
        .arg("--out")
        .arg(b.path())
        .env("SERIESLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        fs::read(a.path().join("unbiased.json")).unwrap(),
        fs::read(b.path().join("unbiased.json")).unwrap()
    );
}

#[test]
fn generate_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let o = serieslab(
        &[
            "generate",
            "--process",
            "bernoulli:0.7,0.3",
            "--length",
            "50000",
            "--seed",
            "3",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let seq = dir.path().join("seq.bin");
    assert!(seq.exists());
    assert!(dir.path().join("seq.bin.json").exists());
    let o = serieslab(
        &[
            "analyze",
            "--in",
            seq.to_str().unwrap(),
            "--block",
            "01",
            "--starts",
            "2000",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("analyze.json")).unwrap())
            .unwrap();
    let mu = report["record"]["mu_hat"].as_f64().unwrap();
    assert!((mu - 0.21).abs() < 0.01, "{mu}");
}

#[test]
fn oracle_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = serieslab(
        &[
            "oracle-check",
            "--block",
            "0,01",
            "--length",
            "200000",
            "--horizon",
            "20000",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(dir.path().join("oracle.csv").exists());
}

#[test]
fn failed_checks_exit_two() {
    // A repelling threshold of 0.99 cannot be met.
    let dir = tempfile::tempdir().unwrap();
    let o = serieslab(
        &["example1", "--length", "200000", "--threshold", "0.99"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(dir.path().join("example1.json").exists());
}

#[test]
fn bad_magic_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bogus = dir.path().join("bogus.bin");
    fs::write(&bogus, b"NOTMAGIC and some bytes").unwrap();
    let o = serieslab(
        &["analyze", "--in", bogus.to_str().unwrap(), "--block", "0"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a SERIESEQ file"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = serieslab(&["sweep", "--no-such-flag"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = serieslab(&["sweep", "--process", "bernoulli:0.5,0.6"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = serieslab(&["--help"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("oracle-check"));
}
