// SPDX-License-Identifier: Apache-2.0

//! Node load (validations in+out per ledger), network load (bytes and
//! packets at a node's interfaces) and validation inter-arrival stability
//! (quantiles and a rolling mean ±2σ band), plus Content Store rates.

mod encoding;
mod nic;
mod report;
mod rolling;
mod series;

use thiserror::Error;

pub use encoding::EncodingModel;
pub use nic::{nic_counters, NicCounters};
pub use report::{cs_rates, render_table, summary, vals_per_ledger, CsRates, MetricsReport, ReportInputs};
pub use rolling::{rolling_band, RollingBand, DEFAULT_WINDOW};
pub use series::{interarrival_deltas, mean, quantiles, ArrivalSeries, Histogram};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("empty sample")]
    EmptySample,
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("rolling window must be at least 2, got {0}")]
    WindowTooSmall(usize),
    #[error("histogram bin width must be positive, got {0}")]
    BadBinWidth(f64),
    #[error("no ledgers created")]
    ZeroLedgers,
}
