// SPDX-License-Identifier: Apache-2.0

//! Runs every model on its preset topology and prints one comparison table.

use std::time::Duration;

use xrpl_ndn_sim::metrics::render_table;
use xrpl_ndn_sim::models::ModelKind;
use xrpl_ndn_sim::sim::{run, RunConfig, TopologyKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut reports = Vec::new();
    for model in ModelKind::ALL {
        let kind = match model {
            ModelKind::Baseline => TopologyKind::Baseline3,
            ModelKind::AnnouncePull => TopologyKind::Star7,
            _ => TopologyKind::Triangle6,
        };
        let mut cfg = RunConfig::preset(kind, model)?;
        cfg.duration = Duration::from_secs(600);
        reports.push(run(&cfg)?.report);
    }
    print!("{}", render_table(&reports));
    Ok(())
}
