// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use super::{LinkId, PacketKind, Topology};
use crate::time::SimTime;
use crate::NodeId;

/// One packet transmission.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRecord {
    /// Transmit time; the packet arrives one link latency later.
    pub time: SimTime,
    pub link: LinkId,
    pub from: NodeId,
    pub to: NodeId,
    pub kind: PacketKind,
    /// NDN name, or `/validation/<producer>/<seq>` for raw validations.
    pub name: String,
    /// Encoded size under the run's encoding model.
    pub bytes: u64,
}

/// Append-only record of every transmission in a run, in execution order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EventLog {
    records: Vec<LogRecord>,
}

impl EventLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: LogRecord) {
        self.records.push(record);
    }

    pub fn records(&self) -> &[LogRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn total_bytes(&self) -> u64 {
        self.records.iter().map(|r| r.bytes).sum()
    }

    /// Flat CSV with header `time_s,link,from,to,kind,name,bytes`; node
    /// columns use topology labels.
    pub fn to_csv(&self, topo: &Topology) -> String {
        let mut out = String::from("time_s,link,from,to,kind,name,bytes\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.time,
                r.link.0,
                topo.label(r.from),
                topo.label(r.to),
                r.kind,
                r.name,
                r.bytes
            );
        }
        out
    }
}
