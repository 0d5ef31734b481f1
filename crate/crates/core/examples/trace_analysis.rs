// SPDX-License-Identifier: Apache-2.0

//! Inter-arrival analysis of a synthetic trace: deltas, quantiles, a
//! rolling mean band and a histogram.

use xrpl_ndn_sim::metrics::{interarrival_deltas, quantiles, rolling_band, Histogram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // regular 4 s arrivals with one missed ledger
    let arrivals: Vec<f64> = (0..60).filter(|i| *i != 30).map(|i| 4.0 * i as f64).collect();
    let deltas = interarrival_deltas(&arrivals);
    let q = quantiles(&deltas, &[0.25, 0.5, 0.75])?;
    println!("{} deltas, quartiles {q:?}", deltas.len());

    let band = rolling_band(&deltas, 10)?;
    let peak = (0..band.len()).max_by(|a, b| band.upper[*a].total_cmp(&band.upper[*b])).unwrap();
    println!(
        "widest band ends at delta {}: center {:.2}, upper {:.2}, lower {:.2}",
        band.delta_index(peak),
        band.center[peak],
        band.upper[peak],
        band.lower[peak]
    );

    let hist = Histogram::new(&deltas, 1.0)?;
    for (i, c) in hist.counts.iter().enumerate().filter(|(_, c)| **c > 0) {
        println!("[{:.0}, {:.0}) s: {c}", hist.bin_start(i), hist.bin_start(i) + 1.0);
    }
    Ok(())
}
