// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::ndn::{DataPacket, InterestPacket, Name};
use crate::sim::Packet;

/// Byte-size model used for link accounting. Payloads are measured exactly;
/// headers are flat per-packet overheads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EncodingModel {
    pub interest_overhead: u64,
    pub data_overhead: u64,
    /// Added to each name component's length.
    pub name_component_overhead: u64,
    /// Framing around a validation sent directly between peers.
    pub peer_overhead: u64,
}

impl Default for EncodingModel {
    fn default() -> Self {
        Self {
            interest_overhead: 60,
            data_overhead: 60,
            name_component_overhead: 2,
            peer_overhead: 60,
        }
    }
}

impl EncodingModel {
    pub fn name_size(&self, name: &Name) -> u64 {
        name.components()
            .iter()
            .map(|c| c.len() as u64 + self.name_component_overhead)
            .sum()
    }

    pub fn interest_size(&self, i: &InterestPacket) -> u64 {
        self.interest_overhead
            + self.name_size(i.name())
            + i.app_parameters().map_or(0, |p| p.len() as u64)
    }

    pub fn data_size(&self, d: &DataPacket) -> u64 {
        self.data_overhead + self.name_size(d.name()) + d.content().len() as u64
    }

    pub fn packet_size(&self, p: &Packet) -> u64 {
        match p {
            Packet::Interest(i) => self.interest_size(i),
            Packet::Data(d) => self.data_size(d),
            Packet::Validation(v) => self.peer_overhead + u64::from(v.payload_size),
        }
    }
}
