// SPDX-License-Identifier: Apache-2.0

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{Name, NdnError};
use crate::NodeId;

/// Default Interest lifetime; long enough to span one ledger interval.
pub const DEFAULT_INTEREST_LIFETIME: Duration = Duration::from_millis(4_000);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterestPacket {
    name: Name,
    nonce: u64,
    lifetime: Duration,
    app_parameters: Option<Vec<u8>>,
}

impl InterestPacket {
    pub fn new(name: Name, nonce: u64, lifetime: Duration) -> Result<Self, NdnError> {
        if lifetime.is_zero() {
            return Err(NdnError::ZeroLifetime);
        }
        Ok(Self {
            name,
            nonce,
            lifetime,
            app_parameters: None,
        })
    }

    /// Attaches an application payload (the piggyback path).
    pub fn with_app_parameters(mut self, params: Vec<u8>) -> Result<Self, NdnError> {
        if params.is_empty() {
            return Err(NdnError::EmptyAppParameters);
        }
        self.app_parameters = Some(params);
        Ok(self)
    }

    pub fn name(&self) -> &Name {
        &self.name
    }

    pub fn nonce(&self) -> u64 {
        self.nonce
    }

    pub fn lifetime(&self) -> Duration {
        self.lifetime
    }

    pub fn app_parameters(&self) -> Option<&[u8]> {
        self.app_parameters.as_deref()
    }
}

/// A named, producer-attributed chunk of content. The producer id stands in
/// for a signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataPacket {
    name: Name,
    content: Vec<u8>,
    freshness: Duration,
    producer_id: NodeId,
}

impl DataPacket {
    pub fn new(
        name: Name,
        content: Vec<u8>,
        freshness: Duration,
        producer_id: NodeId,
    ) -> Result<Self, NdnError> {
        if content.is_empty() {
            return Err(NdnError::EmptyContent);
        }
        Ok(Self {
            name,
            content,
            freshness,
            producer_id,
        })
    }

    pub fn name(&self) -> &Name {
        &self.name
    }

    pub fn content(&self) -> &[u8] {
        &self.content
    }

    pub fn freshness(&self) -> Duration {
        self.freshness
    }

    pub fn producer_id(&self) -> NodeId {
        self.producer_id
    }
}
