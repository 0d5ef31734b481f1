// SPDX-License-Identifier: Apache-2.0

//! Validations carried as Interest parameters over the six-node triangle.
//! Forwarders multicast them without PIT or CS state.

use std::time::Duration;

use xrpl_ndn_sim::metrics::render_table;
use xrpl_ndn_sim::models::ModelKind;
use xrpl_ndn_sim::sim::{run, RunConfig, TopologyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::preset(TopologyKind::Triangle6, ModelKind::Piggyback)?;
    cfg.duration = Duration::from_secs(900);
    let out = run(&cfg)?;
    print!("{}", render_table(std::slice::from_ref(&out.report)));
    for (producer, times) in out.observer_arrivals() {
        println!("{} heard {} validations from {producer}", out.observer_label(), times.len());
    }
    Ok(())
}
