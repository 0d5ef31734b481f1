// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{quantiles, Histogram, MetricsError, NicCounters};
use crate::models::ModelKind;
use crate::ndn::CsStats;
use crate::sim::TopologyKind;
use crate::xrpl::ValidatorCounters;

/// Validations in plus out per ledger created.
pub fn vals_per_ledger(c: &ValidatorCounters) -> Result<f64, MetricsError> {
    if c.ledgers_created == 0 {
        return Err(MetricsError::ZeroLedgers);
    }
    Ok((c.validations_in + c.validations_out) as f64 / c.ledgers_created as f64)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CsRates {
    pub misses_per_min: f64,
    pub hits_per_min: f64,
    pub entries: u64,
}

pub fn cs_rates(stats: CsStats, duration: Duration) -> CsRates {
    let minutes = duration.as_secs_f64() / 60.0;
    if minutes <= 0.0 {
        return CsRates::default();
    }
    CsRates {
        misses_per_min: stats.misses as f64 / minutes,
        hits_per_min: stats.hits as f64 / minutes,
        entries: stats.entries,
    }
}

/// One row of the experiments summary. `None` marks a quantity that was not
/// collected for this run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub model: ModelKind,
    pub topology: TopologyKind,
    pub seed: u64,
    pub duration_s: f64,
    /// Node whose interfaces the NIC figures describe.
    pub observer: String,
    pub q25: Option<f64>,
    pub q50: Option<f64>,
    pub q75: Option<f64>,
    pub delta_count: usize,
    pub vals_in_out_per_ledger: Option<f64>,
    pub vals_per_validator: BTreeMap<String, f64>,
    pub avg_bitrate_kbit_s: Option<f64>,
    pub packets_per_10min: Option<f64>,
    pub cs_misses_per_min: Option<f64>,
    pub cs_hits_per_min: Option<f64>,
    pub cs_entries: Option<u64>,
    pub histogram: Option<Histogram>,
}

/// Everything [`summary`] needs from a finished run.
#[derive(Clone, Debug)]
pub struct ReportInputs {
    pub model: ModelKind,
    pub topology: TopologyKind,
    pub seed: u64,
    pub duration: Duration,
    pub observer: String,
    /// Inter-arrival deltas pooled over every (observer, producer) pair.
    pub deltas: Vec<f64>,
    pub validators: BTreeMap<String, ValidatorCounters>,
    /// Observer traffic over the bitrate window.
    pub bitrate_window: Option<NicCounters>,
    /// Observer traffic over the packet window, and that window's length.
    pub packet_window: Option<(NicCounters, Duration)>,
    /// CS counters summed over all NDN nodes; `None` without an overlay.
    pub cs: Option<CsStats>,
    pub hist_bin_s: f64,
}

pub fn summary(inputs: ReportInputs) -> Result<MetricsReport, MetricsError> {
    let (q25, q50, q75) = match quantiles(&inputs.deltas, &[0.25, 0.5, 0.75]) {
        Ok(q) => (Some(q[0]), Some(q[1]), Some(q[2])),
        Err(MetricsError::EmptySample) => (None, None, None),
        Err(e) => return Err(e),
    };
    let histogram = if inputs.deltas.is_empty() {
        None
    } else {
        Some(Histogram::new(&inputs.deltas, inputs.hist_bin_s)?)
    };
    let vals_per_validator: BTreeMap<String, f64> = inputs
        .validators
        .iter()
        .filter_map(|(k, c)| vals_per_ledger(c).ok().map(|v| (k.clone(), v)))
        .collect();
    let vals_in_out_per_ledger = if vals_per_validator.is_empty() {
        None
    } else {
        Some(vals_per_validator.values().sum::<f64>() / vals_per_validator.len() as f64)
    };
    let packets_per_10min = inputs.packet_window.and_then(|(nic, window)| {
        let secs = window.as_secs_f64();
        (secs > 0.0).then(|| nic.packets as f64 * 600.0 / secs)
    });
    let cs = inputs.cs.map(|s| cs_rates(s, inputs.duration));
    Ok(MetricsReport {
        model: inputs.model,
        topology: inputs.topology,
        seed: inputs.seed,
        duration_s: inputs.duration.as_secs_f64(),
        observer: inputs.observer,
        q25,
        q50,
        q75,
        delta_count: inputs.deltas.len(),
        vals_in_out_per_ledger,
        vals_per_validator,
        avg_bitrate_kbit_s: inputs.bitrate_window.map(|n| n.avg_bitrate_kbit_s),
        packets_per_10min,
        cs_misses_per_min: cs.map(|c| c.misses_per_min),
        cs_hits_per_min: cs.map(|c| c.hits_per_min),
        cs_entries: cs.map(|c| c.entries),
        histogram,
    })
}

const HEADERS: [&str; 11] = [
    "Model",
    "Topo",
    "q(0.25)",
    "q(0.5)",
    "q(0.75)",
    "vals in+out/ledger",
    "avg kbit/s (5min)",
    "pkt/10min",
    "CS misses/min",
    "CS hits/min",
    "CS entries",
];

fn opt(v: Option<f64>, decimals: usize) -> String {
    v.map_or_else(|| "N/A".to_string(), |x| format!("{x:.decimals$}"))
}

fn row(r: &MetricsReport) -> [String; 11] {
    [
        r.model.to_string(),
        r.topology.to_string(),
        opt(r.q25, 2),
        opt(r.q50, 2),
        opt(r.q75, 2),
        opt(r.vals_in_out_per_ledger, 2),
        opt(r.avg_bitrate_kbit_s, 1),
        opt(r.packets_per_10min, 0),
        opt(r.cs_misses_per_min, 1),
        opt(r.cs_hits_per_min, 1),
        r.cs_entries.map_or_else(|| "N/A".to_string(), |e| e.to_string()),
    ]
}

/// Column-aligned text table, one line per report.
pub fn render_table(reports: &[MetricsReport]) -> String {
    let rows: Vec<[String; 11]> = reports.iter().map(row).collect();
    let mut widths = HEADERS.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .enumerate()
            .map(|(i, (c, w))| if i < 2 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &HEADERS);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let _ = writeln!(out, "{}", rule.join("  "));
    for r in &rows {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        line(&mut out, &cells);
    }
    out
}
