// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::app::{Actions, AppAction, ValidatorApp};
use super::{namespace, parse_name, ModelError, NameKind, ParsedName};
use crate::ndn::InterestPacket;
use crate::time::SimTime;
use crate::xrpl::Validation;
use crate::NodeId;

impl ValidatorApp {
    /// Consumer side: keep an Interest pending for the sequence after the
    /// last one seen from `producer`.
    pub fn advance_request(&mut self, producer: NodeId, _now: SimTime, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let Some(rec) = self.records.get_mut(&producer) else {
            return Ok(Vec::new());
        };
        let next = rec.last_seen_seq + 1;
        if rec.outstanding_request.is_some_and(|o| o >= next) {
            return Ok(Vec::new());
        }
        rec.outstanding_request = Some(next);
        let name = namespace(Some(self.label(producer)), NameKind::Validation, Some(next))?;
        self.express(name, rng)
    }

    /// Producer side: remember an Interest for a sequence not yet produced.
    pub(super) fn hold_pending(&mut self, interest: &InterestPacket, now: SimTime) {
        let expires = now + interest.lifetime();
        let entry = self.pending.entry(interest.name().clone()).or_insert(expires);
        *entry = (*entry).max(expires);
    }

    /// Producer side: answer held Interests for the validation just made.
    pub(super) fn serve_pending(&mut self, val: &Validation, now: SimTime) -> Result<Actions, ModelError> {
        self.pending.retain(|_, exp| now < *exp);
        let own = self.own_label().to_string();
        let ready: Vec<_> = self
            .pending
            .keys()
            .filter(|n| {
                matches!(parse_name(n), Some(ParsedName::Validation { producer, seq })
                    if producer == own && seq == val.ledger_seq)
            })
            .cloned()
            .collect();
        let mut actions = Vec::with_capacity(ready.len());
        for name in ready {
            self.pending.remove(&name);
            actions.push(AppAction::Put(self.validation_data(val)?));
        }
        Ok(actions)
    }
}

#[cfg(test)]
mod tests {
    use std::time::Duration;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::app::testing::{app, expressed, A, B};
    use super::super::ModelKind;
    use super::*;

    #[test]
    fn start_requests_first_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut a = app(A, ModelKind::AdvanceRequest);
        let actions = a.start(SimTime::ZERO, &mut rng).unwrap();
        assert_eq!(expressed(&actions), ["/xrpl/B/val/1", "/xrpl/C/val/1"]);
        // already pending: no second Interest
        assert!(a.advance_request(B, SimTime::ZERO, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn held_interest_is_served_on_close() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut b = app(B, ModelKind::AdvanceRequest);
        let i = InterestPacket::new("/xrpl/B/val/1".parse().unwrap(), 4, Duration::from_secs(4)).unwrap();
        assert!(b.on_interest(&i, SimTime::from_millis(10), &mut rng).unwrap().is_empty());
        let (actions, _) = b.on_ledger_close(SimTime::from_secs_f64(3.0), &mut rng).unwrap();
        assert!(matches!(actions.as_slice(), [AppAction::Put(d)] if d.name() == i.name()));
    }

    #[test]
    fn expired_hold_is_not_served() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut b = app(B, ModelKind::AdvanceRequest);
        let i = InterestPacket::new("/xrpl/B/val/1".parse().unwrap(), 4, Duration::from_secs(2)).unwrap();
        b.on_interest(&i, SimTime::ZERO, &mut rng).unwrap();
        let (actions, _) = b.on_ledger_close(SimTime::from_secs_f64(3.0), &mut rng).unwrap();
        assert!(actions.is_empty());
    }
}
