// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::time::SimTime;

/// First-copy arrival times of one producer's validations at one observer.
/// Timestamps are strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrivalSeries {
    times: Vec<SimTime>,
}

impl ArrivalSeries {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `t`; returns false (and ignores it) unless it is later than
    /// the last recorded arrival.
    pub fn push(&mut self, t: SimTime) -> bool {
        if self.times.last().is_some_and(|last| t <= *last) {
            return false;
        }
        self.times.push(t);
        true
    }

    pub fn times(&self) -> &[SimTime] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn secs(&self) -> Vec<f64> {
        self.times.iter().map(|t| t.as_secs_f64()).collect()
    }
}

/// `t[i+1] - t[i]` for consecutive arrivals; empty for fewer than two.
pub fn interarrival_deltas(arrivals: &[f64]) -> Vec<f64> {
    arrivals.windows(2).map(|w| w[1] - w[0]).collect()
}

pub fn mean(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    Some(xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Linear-interpolation quantiles: position `p·(n−1)` in the sorted sample.
pub fn quantiles(xs: &[f64], probs: &[f64]) -> Result<Vec<f64>, MetricsError> {
    if xs.is_empty() {
        return Err(MetricsError::EmptySample);
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let last = (sorted.len() - 1) as f64;
    probs
        .iter()
        .map(|&p| {
            if !(0.0..=1.0).contains(&p) {
                return Err(MetricsError::BadProbability(p));
            }
            let pos = p * last;
            let lo = pos.floor() as usize;
            let hi = pos.ceil() as usize;
            let frac = pos - lo as f64;
            Ok(sorted[lo] + (sorted[hi] - sorted[lo]) * frac)
        })
        .collect()
}

/// Fixed-width histogram with bins starting at zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(xs: &[f64], bin_width: f64) -> Result<Self, MetricsError> {
        if !(bin_width > 0.0) {
            return Err(MetricsError::BadBinWidth(bin_width));
        }
        let mut counts = Vec::new();
        for &x in xs {
            let idx = (x.max(0.0) / bin_width).floor() as usize;
            if idx >= counts.len() {
                counts.resize(idx + 1, 0);
            }
            counts[idx] += 1;
        }
        Ok(Self { bin_width, counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bin_start(&self, i: usize) -> f64 {
        i as f64 * self.bin_width
    }
}
