// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::MetricsError;

pub const DEFAULT_WINDOW: usize = 20;

/// Rolling mean with a ±2σ band. Element `k` covers
/// `deltas[k .. k + window]`, i.e. it is defined from delta index
/// `window - 1` onward.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RollingBand {
    pub window: usize,
    pub center: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl RollingBand {
    pub fn len(&self) -> usize {
        self.center.len()
    }

    pub fn is_empty(&self) -> bool {
        self.center.is_empty()
    }

    /// Index into the delta series that element `k` ends at.
    pub fn delta_index(&self, k: usize) -> usize {
        k + self.window - 1
    }
}

/// Rolling mean and sample standard deviation over `window` consecutive
/// deltas, maintained incrementally.
///
/// Sums are taken over values shifted by the first delta so that the
/// variance does not lose precision to a large common offset.
pub fn rolling_band(deltas: &[f64], window: usize) -> Result<RollingBand, MetricsError> {
    if window < 2 {
        return Err(MetricsError::WindowTooSmall(window));
    }
    let mut band = RollingBand {
        window,
        ..Default::default()
    };
    if deltas.len() < window {
        return Ok(band);
    }
    let shift = deltas[0];
    let w = window as f64;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for &x in &deltas[..window] {
        let y = x - shift;
        s1 += y;
        s2 += y * y;
    }
    let n_out = deltas.len() - window + 1;
    band.center.reserve(n_out);
    band.upper.reserve(n_out);
    band.lower.reserve(n_out);
    for k in 0..n_out {
        if k > 0 {
            let old = deltas[k - 1] - shift;
            let new = deltas[k + window - 1] - shift;
            s1 += new - old;
            s2 += new * new - old * old;
        }
        let mean_shifted = s1 / w;
        let var = ((s2 - s1 * mean_shifted) / (w - 1.0)).max(0.0);
        let sd = var.sqrt();
        let center = mean_shifted + shift;
        band.center.push(center);
        band.upper.push(center + 2.0 * sd);
        band.lower.push(center - 2.0 * sd);
    }
    Ok(band)
}
