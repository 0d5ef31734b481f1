// SPDX-License-Identifier: Apache-2.0

//! Single-node NDN forwarding: packets, Content Store, Pending Interest
//! Table, Forwarding Information Base and the Interest/Data pipeline.

mod cs;
mod fib;
mod name;
mod node;
mod packet;
mod pit;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cs::{ContentStore, CsStats, DEFAULT_CS_CAPACITY};
pub use fib::{FibEntry, FibMatch, ForwardingInformationBase, Strategy};
pub use name::Name;
pub use node::{DropReason, Effect, ForwarderCounters, NdnNodeState};
pub use packet::{DataPacket, InterestPacket, DEFAULT_INTEREST_LIFETIME};
pub use pit::{PendingInterestTable, PitInsert};

/// Face identifier local to one node. Face 0 is the co-located application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceId(pub u32);

impl FaceId {
    pub const APP: FaceId = FaceId(0);
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "face{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NdnError {
    #[error("name has no components")]
    EmptyName,
    #[error("invalid name component {0:?}")]
    BadComponent(String),
    #[error("interest lifetime must be positive")]
    ZeroLifetime,
    #[error("app parameters, when present, must be non-empty")]
    EmptyAppParameters,
    #[error("data content must be non-empty")]
    EmptyContent,
}
