// SPDX-License-Identifier: Apache-2.0

//! Discrete-event core: a stable-order scheduler, lossless FIFO links with
//! byte accounting, the preset topologies and the [`run`] driver.

mod engine;
mod event;
mod log;
mod topology;

use std::fmt;

use thiserror::Error;

use crate::metrics::MetricsError;
use crate::models::ModelError;
use crate::ndn::{DataPacket, InterestPacket};
use crate::time::SimTime;
use crate::xrpl::{Validation, XrplError};

pub use engine::{run, NodeStats, RunConfig, RunOutput, DEFAULT_HIST_BIN_S};
pub use event::{Event, Scheduler};
pub use log::{EventLog, LogRecord};
pub use topology::{
    build_topology, Face, Link, LinkId, NodeSpec, Topology, TopologyKind, DEFAULT_LINK_LATENCY,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("cannot schedule at {at}s, clock is already at {now}s")]
    ScheduleInPast { now: SimTime, at: SimTime },
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
    #[error("invalid topology: {0}")]
    BadTopology(String),
    #[error("invalid run configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Xrpl(#[from] XrplError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Anything carried over a link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Packet {
    Interest(InterestPacket),
    Data(DataPacket),
    /// A raw validation sent directly between flooding peers.
    Validation(Validation),
}

impl Packet {
    pub fn kind(&self) -> PacketKind {
        match self {
            Packet::Interest(_) => PacketKind::Interest,
            Packet::Data(_) => PacketKind::Data,
            Packet::Validation(_) => PacketKind::Validation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PacketKind {
    Interest,
    Data,
    Validation,
}

impl fmt::Display for PacketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PacketKind::Interest => "interest",
            PacketKind::Data => "data",
            PacketKind::Validation => "validation",
        })
    }
}
