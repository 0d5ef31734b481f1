// SPDX-License-Identifier: Apache-2.0

//! Consumers poll each producer's latest sequence number, then fetch the
//! validation. Compares the two poll clocks.

use std::time::Duration;

use xrpl_ndn_sim::models::{ModelKind, PollClock};
use xrpl_ndn_sim::sim::{run, RunConfig, TopologyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for clock in [PollClock::AfterResponse, PollClock::FixedRate] {
        let mut cfg = RunConfig::preset(TopologyKind::Triangle6, ModelKind::Polling)?;
        cfg.duration = Duration::from_secs(900);
        cfg.polling.clock = clock;
        let r = run(&cfg)?.report;
        let fmt = |v: Option<f64>| v.map_or("N/A".to_string(), |x| format!("{x:.3}"));
        println!(
            "{clock:?}: inter-arrival q25 {} q50 {} q75 {}, cs hits/min {}",
            fmt(r.q25),
            fmt(r.q50),
            fmt(r.q75),
            fmt(r.cs_hits_per_min)
        );
    }
    Ok(())
}
