// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};

use super::config::ConfigFile;
use super::trace::{parse_trace, write_trace};
use super::{AnalyzeArgs, CliError, CompareArgs, RunArgs};
use crate::metrics::{interarrival_deltas, mean, quantiles, render_table, rolling_band, Histogram, MetricsReport};
use crate::sim::run;

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Inter-arrival statistics of one producer as seen by one observer.
#[derive(Clone, Debug, PartialEq)]
pub struct M3Stats {
    pub producer: String,
    pub deltas: usize,
    pub mean: Option<f64>,
    /// q(0.25), q(0.5), q(0.75).
    pub quantiles: Option<[f64; 3]>,
}

/// Writes the inter-arrival file set for `observer` under
/// `dir/m3/<observer>/`: per producer `deltas_<p>.csv`
/// (`index,producer,delta_s`), `band_<p>.csv` (`index,center,upper,lower`,
/// indexed by the last delta in the window) and `hist_<p>.csv`
/// (`bin_start_s,count`), plus `stats.csv` over all producers.
pub fn write_m3(
    dir: &Path,
    observer: &str,
    series: &BTreeMap<String, Vec<f64>>,
    window: usize,
    hist_bin_s: f64,
) -> Result<Vec<M3Stats>, CliError> {
    let base = dir.join("m3").join(observer);
    let mut stats_csv = String::from("producer,deltas,mean_s,q25_s,q50_s,q75_s\n");
    let mut all = Vec::with_capacity(series.len());
    for (producer, arrivals) in series {
        let deltas = interarrival_deltas(arrivals);

        let mut out = String::from("index,producer,delta_s\n");
        for (i, d) in deltas.iter().enumerate() {
            let _ = writeln!(out, "{i},{producer},{d}");
        }
        write_file(&base.join(format!("deltas_{producer}.csv")), &out)?;

        let band = rolling_band(&deltas, window).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut out = String::from("index,center,upper,lower\n");
        for k in 0..band.len() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                band.delta_index(k),
                band.center[k],
                band.upper[k],
                band.lower[k]
            );
        }
        write_file(&base.join(format!("band_{producer}.csv")), &out)?;

        let hist = Histogram::new(&deltas, hist_bin_s).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut out = String::from("bin_start_s,count\n");
        for (i, c) in hist.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{c}", hist.bin_start(i));
        }
        write_file(&base.join(format!("hist_{producer}.csv")), &out)?;

        let q = quantiles(&deltas, &[0.25, 0.5, 0.75]).ok().map(|q| [q[0], q[1], q[2]]);
        let m = mean(&deltas);
        let show = |v: Option<f64>| v.map_or_else(String::new, |x| x.to_string());
        let _ = writeln!(
            stats_csv,
            "{producer},{},{},{},{},{}",
            deltas.len(),
            show(m),
            show(q.map(|q| q[0])),
            show(q.map(|q| q[1])),
            show(q.map(|q| q[2]))
        );
        all.push(M3Stats {
            producer: producer.clone(),
            deltas: deltas.len(),
            mean: m,
            quantiles: q,
        });
    }
    write_file(&base.join("stats.csv"), &stats_csv)?;
    Ok(all)
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: MetricsReport,
    pub out_dir: PathBuf,
}

/// Runs the configured simulation and writes every output file.
pub fn cmd_run(args: &RunArgs) -> Result<RunOutcome, CliError> {
    let file = ConfigFile::load(&args.config)?;
    let mut cfg = file.to_run_config()?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let window = args.window.unwrap_or_else(|| file.window());
    if window < 2 {
        return Err(CliError::Usage("--window must be at least 2".into()));
    }
    let out_dir = args
        .out_dir
        .clone()
        .or_else(|| file.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));

    info!("running {} on {} for {:?}", cfg.model, cfg.topology.kind(), cfg.duration);
    let out = run(&cfg)?;

    write_file(&out_dir.join("events.csv"), &out.log.to_csv(&out.topology))?;
    for (observer, series) in &out.arrivals {
        write_file(&out_dir.join(format!("trace_{observer}.csv")), &write_trace(series))?;
        write_m3(&out_dir, observer, series, window, cfg.hist_bin_s)?;
    }
    let table = render_table(std::slice::from_ref(&out.report));
    write_file(&out_dir.join("summary.txt"), &table)?;
    let json = serde_json::to_string_pretty(&out.report).map_err(|e| CliError::Data(e.to_string()))?;
    write_file(&out_dir.join("summary.json"), &(json + "\n"))?;
    print!("{table}");
    Ok(RunOutcome {
        report: out.report,
        out_dir,
    })
}

fn observer_name(args: &AnalyzeArgs) -> String {
    if let Some(o) = &args.observer {
        return o.clone();
    }
    let stem = args
        .trace
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "trace".into());
    match stem.strip_prefix("trace_") {
        Some(rest) if !rest.is_empty() => rest.to_string(),
        _ => stem,
    }
}

/// Runs the inter-arrival pipeline over an arrival trace.
pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<Vec<M3Stats>, CliError> {
    if args.window < 2 {
        return Err(CliError::Usage("--window must be at least 2".into()));
    }
    if !(args.hist_bin_s > 0.0) {
        return Err(CliError::Usage("--hist-bin-s must be positive".into()));
    }
    let text = fs::read_to_string(&args.trace).map_err(|source| CliError::Io {
        path: args.trace.clone(),
        source,
    })?;
    let trace = parse_trace(&text)?;
    if trace.skipped > 0 {
        warn!("{} malformed rows skipped", trace.skipped);
    }
    if trace.duplicates > 0 {
        info!("{} duplicate arrivals dropped", trace.duplicates);
    }
    let observer = observer_name(args);
    let stats = write_m3(&args.out_dir, &observer, &trace.series, args.window, args.hist_bin_s)?;
    println!("producer  deltas  mean_s  q25_s  q50_s  q75_s");
    for s in &stats {
        let f = |v: Option<f64>| v.map_or_else(|| "N/A".to_string(), |x| format!("{x:.3}"));
        println!(
            "{}  {}  {}  {}  {}  {}",
            s.producer,
            s.deltas,
            f(s.mean),
            f(s.quantiles.map(|q| q[0])),
            f(s.quantiles.map(|q| q[1])),
            f(s.quantiles.map(|q| q[2]))
        );
    }
    println!("skipped rows: {}", trace.skipped);
    Ok(stats)
}

fn column_names(reports: &[MetricsReport]) -> Vec<String> {
    let base: Vec<String> = reports.iter().map(|r| format!("{}_{}", r.model, r.topology)).collect();
    base.iter()
        .enumerate()
        .map(|(i, b)| {
            if base.iter().filter(|x| *x == b).count() > 1 {
                format!("{b}_{i}")
            } else {
                b.clone()
            }
        })
        .collect()
}

/// Merges summaries into one table, an overlaid histogram CSV and
/// node-load ratios of the first summary against each other one.
pub fn cmd_compare(args: &CompareArgs) -> Result<String, CliError> {
    if args.reports.len() < 2 {
        return Err(CliError::Usage("compare needs at least two summary files".into()));
    }
    let mut reports = Vec::with_capacity(args.reports.len());
    for p in &args.reports {
        let text = fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        })?;
        let r: MetricsReport =
            serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
        reports.push(r);
    }
    let widths: Vec<f64> = reports
        .iter()
        .filter_map(|r| r.histogram.as_ref().map(|h| h.bin_width))
        .collect();
    if widths.windows(2).any(|w| w[0] != w[1]) {
        return Err(CliError::Data(format!(
            "histograms use different bin widths: {widths:?}"
        )));
    }

    let mut text = render_table(&reports);
    let first = &reports[0];
    for r in &reports[1..] {
        if let (Some(a), Some(b)) = (first.vals_in_out_per_ledger, r.vals_in_out_per_ledger) {
            let _ = writeln!(
                text,
                "vals_in_out_per_ledger ratio {}/{} over {}/{}: {:.2}",
                first.model,
                first.topology,
                r.model,
                r.topology,
                a / b
            );
        }
    }

    let names = column_names(&reports);
    let bins = reports
        .iter()
        .filter_map(|r| r.histogram.as_ref().map(|h| h.counts.len()))
        .max()
        .unwrap_or(0);
    let mut hist = format!("bin_start_s,{}\n", names.join(","));
    if let Some(&w) = widths.first() {
        for i in 0..bins {
            let cells: Vec<String> = reports
                .iter()
                .map(|r| {
                    r.histogram
                        .as_ref()
                        .map_or(0, |h| h.counts.get(i).copied().unwrap_or(0))
                        .to_string()
                })
                .collect();
            let _ = writeln!(hist, "{},{}", i as f64 * w, cells.join(","));
        }
    }
    write_file(&args.out_dir.join("compare.txt"), &text)?;
    write_file(&args.out_dir.join("compare_hist.csv"), &hist)?;
    print!("{text}");
    Ok(text)
}
