// SPDX-License-Identifier: Apache-2.0

//! Producers announce new sequence numbers and consumers pull them. With a
//! slower hub link to C, the hub's cache answers the later pull.

use std::time::Duration;

use xrpl_ndn_sim::models::ModelKind;
use xrpl_ndn_sim::sim::{run, RunConfig, TopologyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for slow in [None, Some(Duration::from_millis(50))] {
        let mut cfg = RunConfig::preset(TopologyKind::Star7, ModelKind::AnnouncePull)?;
        cfg.duration = Duration::from_secs(600);
        if let Some(d) = slow {
            cfg.topology.set_latency("hub", "C", d)?;
        }
        let out = run(&cfg)?;
        let hits = out.node("hub").and_then(|n| n.cs).map_or(0, |cs| cs.hits);
        println!("hub-C latency {:?}: hub CS hits {hits}", slow.unwrap_or(Duration::from_millis(5)));
    }
    Ok(())
}
