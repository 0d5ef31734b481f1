// SPDX-License-Identifier: Apache-2.0

use super::app::{Actions, AppAction, ValidatorApp};
use crate::time::SimTime;
use crate::xrpl::Validation;
use crate::NodeId;

impl ValidatorApp {
    /// Sends a fresh own validation to every peer. The close already counted
    /// it once as outgoing.
    pub(super) fn broadcast(&self, val: &Validation) -> Actions {
        self.peers
            .iter()
            .map(|p| AppAction::SendToPeer(*p, val.clone()))
            .collect()
    }

    /// A raw validation from a flooding peer.
    pub fn on_peer_validation(&mut self, val: &Validation, from: NodeId, now: SimTime) -> Actions {
        self.deliver_to_validator(val, Some(from), now)
    }
}
