// SPDX-License-Identifier: Apache-2.0

use std::time::Duration;

use rand::Rng;

use super::app::{Actions, AppAction, AppTimer, ValidatorApp};
use super::{namespace, ModelError, NameKind, PollClock};
use crate::ndn::{DataPacket, InterestPacket};
use crate::time::SimTime;
use crate::NodeId;

impl ValidatorApp {
    /// Asks `producer` for its latest sequence.
    pub fn polling_tick(&mut self, producer: NodeId, _now: SimTime, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let name = namespace(Some(self.label(producer)), NameKind::LatestSeq, None)?;
        let mut actions = self.express(name, rng)?;
        if self.cfg.polling.clock == PollClock::FixedRate {
            actions.push(AppAction::Timer(self.cfg.polling.poll_interval, AppTimer::Poll(producer)));
        }
        Ok(actions)
    }

    pub(super) fn schedule_next_poll(&self, producer: NodeId) -> Actions {
        match self.cfg.polling.clock {
            PollClock::AfterResponse => vec![AppAction::Timer(self.cfg.polling.poll_interval, AppTimer::Poll(producer))],
            PollClock::FixedRate => Vec::new(),
        }
    }

    /// A latest-sequence answer from `producer`. Newer sequences are fetched,
    /// gaps included; stale or unchanged answers are ignored.
    pub fn on_latest_seq_data(
        &mut self,
        producer: NodeId,
        seq: u64,
        _now: SimTime,
        rng: &mut impl Rng,
    ) -> Result<Actions, ModelError> {
        let mut actions = self.schedule_next_poll(producer);
        actions.extend(self.request_missing(producer, seq, rng)?);
        Ok(actions)
    }

    /// Producer side: the current sequence, never cached.
    pub(super) fn answer_latest(&self, interest: &InterestPacket) -> Result<Actions, ModelError> {
        let seq = self.validator.current_seq();
        let data = DataPacket::new(
            interest.name().clone(),
            seq.to_be_bytes().to_vec(),
            Duration::ZERO,
            self.id(),
        )?;
        Ok(vec![AppAction::Put(data)])
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::app::testing::{app, expressed, A, B};
    use super::super::{ModelKind, PollingConfig};
    use super::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(3)
    }

    fn seen(app: &mut ValidatorApp, producer: NodeId, seq: u64) {
        app.records.get_mut(&producer).unwrap().last_seen_seq = seq;
    }

    #[test]
    fn tick_polls_latest() {
        let mut a = app(A, ModelKind::Polling);
        let actions = a.polling_tick(B, SimTime::ZERO, &mut rng()).unwrap();
        assert_eq!(expressed(&actions), ["/xrpl/B/latest"]);
        // next tick waits for the answer by default
        assert!(!actions.iter().any(|x| matches!(x, AppAction::Timer(_, AppTimer::Poll(_)))));
    }

    #[test]
    fn fixed_rate_ticks_every_interval() {
        let mut a = app(A, ModelKind::Polling);
        a.cfg.polling = PollingConfig {
            poll_interval: Duration::from_millis(200),
            clock: PollClock::FixedRate,
        };
        let actions = a.polling_tick(B, SimTime::ZERO, &mut rng()).unwrap();
        assert!(actions.contains(&AppAction::Timer(Duration::from_millis(200), AppTimer::Poll(B))));
    }

    #[test]
    fn unchanged_sequence_fetches_nothing() {
        let mut a = app(A, ModelKind::Polling);
        seen(&mut a, B, 5);
        let actions = a.on_latest_seq_data(B, 5, SimTime::ZERO, &mut rng()).unwrap();
        assert!(expressed(&actions).is_empty());
    }

    #[test]
    fn next_sequence_is_fetched() {
        let mut a = app(A, ModelKind::Polling);
        seen(&mut a, B, 5);
        let actions = a.on_latest_seq_data(B, 6, SimTime::ZERO, &mut rng()).unwrap();
        assert_eq!(expressed(&actions), ["/xrpl/B/val/6"]);
        assert_eq!(a.record(B).unwrap().outstanding_request, Some(6));
        // a second answer while the fetch is out issues nothing
        let again = a.on_latest_seq_data(B, 6, SimTime::ZERO, &mut rng()).unwrap();
        assert!(expressed(&again).is_empty());
    }

    #[test]
    fn gap_is_filled() {
        let mut a = app(A, ModelKind::Polling);
        seen(&mut a, B, 5);
        let actions = a.on_latest_seq_data(B, 8, SimTime::ZERO, &mut rng()).unwrap();
        assert_eq!(expressed(&actions), ["/xrpl/B/val/6", "/xrpl/B/val/7", "/xrpl/B/val/8"]);
    }

    #[test]
    fn stale_answer_is_ignored() {
        let mut a = app(A, ModelKind::Polling);
        seen(&mut a, B, 5);
        let actions = a.on_latest_seq_data(B, 4, SimTime::ZERO, &mut rng()).unwrap();
        assert!(expressed(&actions).is_empty());
        assert_eq!(a.record(B).unwrap().last_seen_seq, 5);
    }

    #[test]
    fn producer_answers_with_uncached_sequence() {
        let mut b = app(B, ModelKind::Polling);
        b.on_ledger_close(SimTime::from_secs_f64(3.0), &mut rng()).unwrap();
        let i = InterestPacket::new("/xrpl/B/latest".parse().unwrap(), 1, Duration::from_secs(4)).unwrap();
        let actions = b.on_interest(&i, SimTime::from_secs_f64(3.1), &mut rng()).unwrap();
        let [AppAction::Put(d)] = actions.as_slice() else {
            panic!("expected one Put, got {actions:?}");
        };
        assert_eq!(d.content(), 1u64.to_be_bytes());
        assert!(d.freshness().is_zero());
    }
}
