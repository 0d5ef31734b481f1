// SPDX-License-Identifier: Apache-2.0

//! Deterministic discrete-event simulator for disseminating consensus
//! validations, either by native peer-to-peer flooding or over an NDN
//! overlay (polling, announce-pull, advance-request, piggyback-on-Interest).
//!
//! The crate is organised bottom-up:
//!
//! - [`ndn`]: a single NDN forwarder (CS, PIT, FIB, Interest/Data pipeline).
//! - [`xrpl`]: a simplified validator that closes ledgers, counts
//!   validations in and out, checks quorum, and floods with duplicate
//!   suppression.
//! - [`models`]: the five dissemination strategies as validator-side
//!   producer and consumer handlers.
//! - [`sim`]: event scheduler, links, the preset topologies and [`sim::run`].
//! - [`metrics`]: node load, network load and inter-arrival statistics.
//! - [`cli`]: config files, trace analysis and report comparison behind the
//!   `xrpl-ndn-sim` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod cli;
pub mod metrics;
pub mod models;
pub mod ndn;
pub mod sim;
pub mod time;
pub mod xrpl;

pub use time::SimTime;

/// Index of a node in a [`sim::Topology`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}
