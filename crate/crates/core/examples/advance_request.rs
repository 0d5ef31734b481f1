// SPDX-License-Identifier: Apache-2.0

//! Consumers send the Interest for the next sequence number ahead of time.
//! The producer holds it and answers at the moment the ledger closes.

use std::time::Duration;

use xrpl_ndn_sim::models::ModelKind;
use xrpl_ndn_sim::sim::{run, PacketKind, RunConfig, TopologyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::preset(TopologyKind::Triangle6, ModelKind::AdvanceRequest)?;
    cfg.duration = Duration::from_secs(30);
    let out = run(&cfg)?;
    for r in out.log.records().iter().filter(|r| r.kind == PacketKind::Data).take(8) {
        println!(
            "{:>9.6}s {} -> {} {}",
            r.time.as_secs_f64(),
            out.topology.label(r.from),
            out.topology.label(r.to),
            r.name
        );
    }
    Ok(())
}
