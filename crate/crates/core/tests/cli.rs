// SPDX-License-Identifier: Apache-2.0

//! End-to-end checks of the `xrpl-ndn-sim` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_xrpl-ndn-sim");

fn sim(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn config(dir: &Path, name: &str, topology: &str, model: &str, bin: f64) -> PathBuf {
    let path = dir.join(format!("{name}.toml"));
    let text = format!(
        "[run]\ntopology = \"{topology}\"\nmodel = \"{model}\"\nduration_s = 120\nseed = 3\n\n\
         [metrics]\nhist_bin_s = {bin}\n"
    );
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_outputs_and_is_repeatable() {
    let tmp = TempDir::new().unwrap();
    let cfg = config(tmp.path(), "pig", "triangle6", "piggyback", 0.05);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for out in [&a, &b] {
        let o = sim(&["run", "--config", s(&cfg), "--out-dir", s(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["events.csv", "summary.json", "summary.txt", "trace_A.csv", "m3/A/stats.csv"] {
        let x = fs::read(a.join(f)).unwrap();
        assert_eq!(x, fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    let events = fs::read_to_string(a.join("events.csv")).unwrap();
    assert!(events.starts_with("time_s,link,from,to,kind,name,bytes\n"));
}

#[test]
fn unknown_model_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = config(tmp.path(), "bad", "triangle6", "gossip", 0.05);
    let o = sim(&["run", "--config", s(&cfg), "--out-dir", s(&tmp.path().join("o"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("run.model"));
}

#[test]
fn unknown_subcommand_exits_one() {
    assert_eq!(sim(&["simulate"]).status.code(), Some(1));
}

#[test]
fn analyze_reproduces_run_outputs() {
    let tmp = TempDir::new().unwrap();
    let cfg = config(tmp.path(), "poll", "triangle6", "polling", 0.05);
    let run_dir = tmp.path().join("run");
    assert!(sim(&["run", "--config", s(&cfg), "--out-dir", s(&run_dir)]).status.success());
    let again = tmp.path().join("again");
    let o = sim(&[
        "analyze",
        s(&run_dir.join("trace_B.csv")),
        "--out-dir",
        s(&again),
        "--hist-bin-s",
        "0.05",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for entry in fs::read_dir(run_dir.join("m3/B")).unwrap() {
        let name = entry.unwrap().file_name();
        let x = fs::read(run_dir.join("m3/B").join(&name)).unwrap();
        assert_eq!(x, fs::read(again.join("m3/B").join(&name)).unwrap(), "{name:?}");
    }
}

fn read_csv_column(path: &Path, col: usize) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(col).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn analyze_regular_and_gapped_traces() {
    let tmp = TempDir::new().unwrap();
    let mut text = String::from("producer_id,arrival_time_s\n");
    for i in 0..40 {
        text.push_str(&format!("P,{}\n", 4 * i));
        // Q skips one arrival in the middle
        if i != 20 {
            text.push_str(&format!("Q,{}\n", 4 * i));
        }
    }
    text.push_str("garbage row\n");
    let trace = tmp.path().join("trace_obs.csv");
    fs::write(&trace, text).unwrap();
    let out = tmp.path().join("out");
    let o = sim(&["analyze", s(&trace), "--out-dir", s(&out), "--window", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("skipped rows: 1"));

    let p = read_csv_column(&out.join("m3/obs/deltas_P.csv"), 2);
    assert!(p.iter().all(|d| *d == 4.0));
    let upper = read_csv_column(&out.join("m3/obs/band_P.csv"), 2);
    let lower = read_csv_column(&out.join("m3/obs/band_P.csv"), 3);
    assert!(upper.iter().zip(&lower).all(|(u, l)| u == l));

    let q = read_csv_column(&out.join("m3/obs/deltas_Q.csv"), 2);
    assert_eq!(q.iter().filter(|d| **d == 8.0).count(), 1);
    let center = read_csv_column(&out.join("m3/obs/band_Q.csv"), 1);
    assert!(center.iter().any(|c| *c > 4.0));
}

#[test]
fn analyze_empty_trace_is_a_data_error() {
    let tmp = TempDir::new().unwrap();
    let trace = tmp.path().join("trace_x.csv");
    fs::write(&trace, "producer_id,arrival_time_s\n").unwrap();
    let o = sim(&["analyze", s(&trace), "--out-dir", s(&tmp.path().join("o"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_checks_inputs_and_reports_ratio() {
    let tmp = TempDir::new().unwrap();
    let mut summaries = Vec::new();
    for (name, topo, model, bin) in [
        ("base", "baseline3", "baseline", 0.05),
        ("pig", "triangle6", "piggyback", 0.05),
        ("odd", "triangle6", "piggyback", 0.1),
    ] {
        let cfg = config(tmp.path(), name, topo, model, bin);
        let dir = tmp.path().join(name);
        assert!(sim(&["run", "--config", s(&cfg), "--out-dir", s(&dir)]).status.success());
        summaries.push(dir.join("summary.json"));
    }
    let out = tmp.path().join("cmp");

    let o = sim(&["compare", s(&summaries[0]), "--out-dir", s(&out)]);
    assert_eq!(o.status.code(), Some(1));

    let o = sim(&["compare", s(&summaries[0]), s(&summaries[1]), "--out-dir", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(out.join("compare.txt")).unwrap();
    assert!(text.contains("ratio baseline/baseline3 over piggyback/triangle6: 2.33"), "{text}");
    assert!(out.join("compare_hist.csv").exists());

    let o = sim(&["compare", s(&summaries[1]), s(&summaries[2]), "--out-dir", s(&out)]);
    assert_eq!(o.status.code(), Some(2));
}
