// SPDX-License-Identifier: Apache-2.0

//! Native flooding between three fully meshed validators. Every node relays
//! each new validation once, so it handles seven per ledger.

use std::time::Duration;

use xrpl_ndn_sim::models::ModelKind;
use xrpl_ndn_sim::sim::{run, RunConfig, TopologyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::preset(TopologyKind::Baseline3, ModelKind::Baseline)?;
    cfg.duration = Duration::from_secs(600);
    let out = run(&cfg)?;
    for (v, ratio) in &out.report.vals_per_validator {
        println!("{v}: {ratio:.3} validations in+out per ledger");
    }
    println!("packets on the wire: {}", out.log.len());
    Ok(())
}
