// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt::Write as _;

use log::warn;

use super::CliError;

pub const TRACE_HEADER: [&str; 2] = ["producer_id", "arrival_time_s"];

/// One first-copy arrival of a producer's validation.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub producer_id: String,
    pub arrival_time_s: f64,
}

/// Arrival series per producer, sorted and free of repeated timestamps.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trace {
    pub series: BTreeMap<String, Vec<f64>>,
    /// Rows that could not be parsed.
    pub skipped: usize,
    /// Rows dropped for repeating a (producer, timestamp) pair.
    pub duplicates: usize,
}

/// Parses a delimited trace with header `producer_id,arrival_time_s`.
/// Malformed rows are skipped and counted; a trace without any usable row
/// is an error.
pub fn parse_trace(text: &str) -> Result<Trace, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Data(format!("unreadable trace header: {e}")))?
        .clone();
    if headers.iter().take(2).ne(TRACE_HEADER) {
        return Err(CliError::Data(format!(
            "trace header must start with {}, got {}",
            TRACE_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut trace = Trace::default();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let parsed = row.ok().and_then(|r| {
            let producer = r.get(0).filter(|p| !p.is_empty())?.to_string();
            let t: f64 = r.get(1)?.parse().ok()?;
            (r.len() == 2 && t.is_finite()).then_some(TraceRecord {
                producer_id: producer,
                arrival_time_s: t,
            })
        });
        match parsed {
            Some(rec) => trace.series.entry(rec.producer_id).or_default().push(rec.arrival_time_s),
            None => {
                warn!("trace line {line}: malformed row skipped");
                trace.skipped += 1;
            }
        }
    }
    for times in trace.series.values_mut() {
        times.sort_by(f64::total_cmp);
        let before = times.len();
        times.dedup();
        trace.duplicates += before - times.len();
    }
    if trace.series.is_empty() {
        return Err(CliError::Data("trace contains no arrivals".into()));
    }
    Ok(trace)
}

/// Renders arrival series in the format [`parse_trace`] reads, ordered by
/// time and then producer. Values print in shortest round-trip form.
pub fn write_trace(series: &BTreeMap<String, Vec<f64>>) -> String {
    let mut rows: Vec<(f64, &str)> = series
        .iter()
        .flat_map(|(p, ts)| ts.iter().map(move |t| (*t, p.as_str())))
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
    let mut out = TRACE_HEADER.join(",") + "\n";
    for (t, p) in rows {
        let _ = writeln!(out, "{p},{t}");
    }
    out
}
