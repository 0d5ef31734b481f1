// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::app::{Actions, AppAction, ValidatorApp};
use super::{namespace, ModelError, NameKind};
use crate::ndn::InterestPacket;
use crate::time::SimTime;
use crate::xrpl::Validation;

impl ValidatorApp {
    /// Producer side: the encoded validation travels as the parameters of
    /// a multicast Interest. No Data ever answers it.
    pub fn piggyback_send(&mut self, val: &Validation, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let name = namespace(None, NameKind::Piggyback, None)?;
        let interest = InterestPacket::new(name, rng.random::<u64>(), self.cfg.interest_lifetime)?
            .with_app_parameters(val.encode()?)?;
        Ok(vec![AppAction::Express(interest)])
    }

    /// Consumer side: the forwarder already handles onward multicast, so
    /// the copy only goes to the validator.
    pub(super) fn on_piggyback(&mut self, interest: &InterestPacket, now: SimTime) -> Result<Actions, ModelError> {
        let Some(params) = interest.app_parameters() else {
            return Ok(Vec::new());
        };
        let val = Validation::decode(params)?;
        if val.validator_id == self.id() {
            return Ok(Vec::new());
        }
        Ok(self.deliver_to_validator(&val, None, now))
    }
}
