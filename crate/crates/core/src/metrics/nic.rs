// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::sim::EventLog;
use crate::time::SimTime;
use crate::NodeId;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NicCounters {
    pub bytes: u64,
    pub packets: u64,
    pub avg_bitrate_kbit_s: f64,
}

/// Bytes and packets sent or received by `node` with transmit time in
/// `[start, end)`, as a capture on the node's interfaces would see them.
pub fn nic_counters(log: &EventLog, node: NodeId, start: SimTime, end: SimTime) -> NicCounters {
    let mut c = NicCounters::default();
    for r in log.records() {
        if r.time < start || r.time >= end || (r.from != node && r.to != node) {
            continue;
        }
        c.bytes += r.bytes;
        c.packets += 1;
    }
    let secs = end.saturating_sub(start).as_secs_f64();
    if secs > 0.0 {
        c.avg_bitrate_kbit_s = 8.0 * c.bytes as f64 / secs / 1000.0;
    }
    c
}
