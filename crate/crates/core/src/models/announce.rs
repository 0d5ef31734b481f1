// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::app::{Actions, AppAction, ValidatorApp};
use super::{namespace, ModelError, NameKind};
use crate::ndn::InterestPacket;
use crate::xrpl::Validation;
use crate::NodeId;

impl ValidatorApp {
    /// Producer side: a fire-and-forget multicast Interest naming the new
    /// sequence. The validation itself is already in the producer store.
    pub fn announce(&mut self, val: &Validation, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let name = namespace(Some(self.own_label()), NameKind::Announce, Some(val.ledger_seq))?;
        let interest = InterestPacket::new(name, rng.random::<u64>(), self.cfg.interest_lifetime)?;
        Ok(vec![AppAction::Express(interest)])
    }

    /// Consumer side: pull what the announcement says is new.
    pub(super) fn on_announce(&mut self, producer: NodeId, seq: u64, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        self.request_missing(producer, seq, rng)
    }
}
