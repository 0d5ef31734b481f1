// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ledger_hash, LedgerHash, Validation, XrplError, DEFAULT_PAYLOAD_SIZE, HEADER_LEN};
use crate::metrics::ArrivalSeries;
use crate::time::SimTime;
use crate::NodeId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidatorConfig {
    /// Trusted validators. Conventionally includes the validator itself.
    pub unl: BTreeSet<NodeId>,
    pub quorum: usize,
    pub ledger_interval: Duration,
    /// Close times are drawn uniformly from `interval ± jitter`.
    pub interval_jitter: Duration,
    pub payload_size: u32,
}

impl ValidatorConfig {
    /// Private-network defaults: 3 s ledgers, no jitter, quorum = |UNL|.
    pub fn new(unl: BTreeSet<NodeId>) -> Self {
        let quorum = unl.len();
        Self {
            unl,
            quorum,
            ledger_interval: Duration::from_secs(3),
            interval_jitter: Duration::ZERO,
            payload_size: DEFAULT_PAYLOAD_SIZE,
        }
    }

    pub fn validate(&self) -> Result<(), XrplError> {
        if self.quorum == 0 || self.quorum > self.unl.len() {
            return Err(XrplError::BadQuorum {
                quorum: self.quorum,
                unl: self.unl.len(),
            });
        }
        if self.ledger_interval <= self.interval_jitter {
            return Err(XrplError::JitterTooLarge);
        }
        if (self.payload_size as usize) < HEADER_LEN {
            return Err(XrplError::PayloadTooSmall(self.payload_size));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidatorCounters {
    pub validations_in: u64,
    pub validations_out: u64,
    pub ledgers_created: u64,
    pub untrusted: u64,
}

/// Outcome of handing a validation to the validator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Received {
    FirstCopy,
    Duplicate,
    /// Sender not on the UNL; handled like a duplicate.
    Untrusted,
}

#[derive(Clone, Debug)]
pub struct ValidatorState {
    id: NodeId,
    config: ValidatorConfig,
    current_seq: u64,
    next_close: Option<SimTime>,
    seen: BTreeSet<(NodeId, u64)>,
    votes: BTreeMap<u64, BTreeMap<NodeId, LedgerHash>>,
    validated: Vec<(u64, SimTime)>,
    arrivals: BTreeMap<NodeId, ArrivalSeries>,
    counters: ValidatorCounters,
}

impl ValidatorState {
    pub fn new(id: NodeId, config: ValidatorConfig) -> Result<Self, XrplError> {
        config.validate()?;
        Ok(Self {
            id,
            config,
            current_seq: 0,
            next_close: None,
            seen: BTreeSet::new(),
            votes: BTreeMap::new(),
            validated: Vec::new(),
            arrivals: BTreeMap::new(),
            counters: ValidatorCounters::default(),
        })
    }

    pub fn id(&self) -> NodeId {
        self.id
    }

    pub fn config(&self) -> &ValidatorConfig {
        &self.config
    }

    pub fn current_seq(&self) -> u64 {
        self.current_seq
    }

    pub fn counters(&self) -> ValidatorCounters {
        self.counters
    }

    pub fn validated_ledgers(&self) -> &[(u64, SimTime)] {
        &self.validated
    }

    /// First-copy arrival times, keyed by producing validator.
    pub fn arrivals(&self) -> &BTreeMap<NodeId, ArrivalSeries> {
        &self.arrivals
    }

    fn draw_interval(&self, rng: &mut impl Rng) -> Duration {
        let base = self.config.ledger_interval.as_micros() as i64;
        let jitter = self.config.interval_jitter.as_micros() as i64;
        let offset = if jitter == 0 {
            0
        } else {
            rng.random_range(-jitter..=jitter)
        };
        Duration::from_micros((base + offset) as u64)
    }

    /// Schedules the first ledger close, one interval after `now`.
    pub fn schedule_first_close(&mut self, now: SimTime, rng: &mut impl Rng) -> SimTime {
        let t = now + self.draw_interval(rng);
        self.next_close = Some(t);
        t
    }

    /// Closes the next ledger and emits this validator's validation for it,
    /// together with the time of the following close.
    pub fn close_ledger(&mut self, now: SimTime, rng: &mut impl Rng) -> Result<(Validation, SimTime), XrplError> {
        if let Some(due) = self.next_close {
            if now < due {
                return Err(XrplError::EarlyClose { now, due });
            }
        }
        self.current_seq += 1;
        let seq = self.current_seq;
        let val = Validation {
            validator_id: self.id,
            ledger_seq: seq,
            ledger_hash: ledger_hash(seq),
            created_at: now,
            payload_size: self.config.payload_size,
        };
        // own vote
        self.seen.insert((self.id, seq));
        self.votes.entry(seq).or_default().insert(self.id, val.ledger_hash);
        self.counters.ledgers_created += 1;
        self.counters.validations_out += 1;
        let next = now + self.draw_interval(rng);
        self.next_close = Some(next);
        Ok((val, next))
    }

    pub fn on_validation_received(&mut self, val: &Validation, now: SimTime) -> Received {
        self.counters.validations_in += 1;
        if !self.config.unl.contains(&val.validator_id) {
            self.counters.untrusted += 1;
            return Received::Untrusted;
        }
        if !self.seen.insert((val.validator_id, val.ledger_seq)) {
            return Received::Duplicate;
        }
        self.votes
            .entry(val.ledger_seq)
            .or_default()
            .insert(val.validator_id, val.ledger_hash);
        if val.validator_id != self.id {
            self.arrivals.entry(val.validator_id).or_default().push(now);
        }
        Received::FirstCopy
    }

    /// Whether `seq` has reached quorum; records the validation time the
    /// first time it does.
    pub fn check_quorum(&mut self, seq: u64, now: SimTime) -> bool {
        if self.validated.iter().any(|(s, _)| *s == seq) {
            return true;
        }
        let expected = ledger_hash(seq);
        let agreeing = self.votes.get(&seq).map_or(0, |votes| {
            votes
                .iter()
                .filter(|(id, h)| (**id == self.id || self.config.unl.contains(id)) && **h == expected)
                .count()
        });
        if agreeing < self.config.quorum {
            return false;
        }
        if self.validated.last().is_none_or(|(last, _)| seq > *last) {
            self.validated.push((seq, now));
        }
        true
    }

    /// Peers a validation is relayed to. First copies go to every peer other
    /// than the sender and the originator; anything else is suppressed.
    pub fn flood_relay(
        &mut self,
        outcome: Received,
        val: &Validation,
        from_peer: NodeId,
        peers: &BTreeSet<NodeId>,
    ) -> BTreeSet<NodeId> {
        if outcome != Received::FirstCopy {
            return BTreeSet::new();
        }
        let targets: BTreeSet<NodeId> = peers
            .iter()
            .copied()
            .filter(|p| *p != from_peer && *p != val.validator_id)
            .collect();
        self.counters.validations_out += targets.len() as u64;
        targets
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    const A: NodeId = NodeId(1);
    const B: NodeId = NodeId(2);
    const C: NodeId = NodeId(3);

    fn validator(id: NodeId) -> ValidatorState {
        ValidatorState::new(id, ValidatorConfig::new(BTreeSet::from([A, B, C]))).unwrap()
    }

    fn val_from(id: NodeId, seq: u64) -> Validation {
        Validation {
            validator_id: id,
            ledger_seq: seq,
            ledger_hash: ledger_hash(seq),
            created_at: SimTime::ZERO,
            payload_size: 500,
        }
    }

    #[test]
    fn config_invariants() {
        let mut cfg = ValidatorConfig::new(BTreeSet::from([A, B]));
        cfg.quorum = 3;
        assert!(cfg.validate().is_err());
        let mut cfg = ValidatorConfig::new(BTreeSet::from([A]));
        cfg.interval_jitter = cfg.ledger_interval;
        assert_eq!(cfg.validate(), Err(XrplError::JitterTooLarge));
    }

    #[test]
    fn zero_jitter_closes_exactly_one_interval_apart() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut v = validator(A);
        let mut t = v.schedule_first_close(SimTime::ZERO, &mut rng);
        assert_eq!(t, SimTime::from_millis(3_000));
        for _ in 0..10 {
            let (_, next) = v.close_ledger(t, &mut rng).unwrap();
            assert_eq!(next - t, Duration::from_secs(3));
            t = next;
        }
    }

    #[test]
    fn jittered_close_stays_in_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut cfg = ValidatorConfig::new(BTreeSet::from([A]));
        cfg.ledger_interval = Duration::from_secs(4);
        cfg.interval_jitter = Duration::from_secs(1);
        let mut v = ValidatorState::new(A, cfg).unwrap();
        let mut t = v.schedule_first_close(SimTime::ZERO, &mut rng);
        for _ in 0..500 {
            let (_, next) = v.close_ledger(t, &mut rng).unwrap();
            let gap = next - t;
            assert!(gap >= Duration::from_secs(3) && gap <= Duration::from_secs(5));
            t = next;
        }
    }

    #[test]
    fn first_close_is_seq_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut v = validator(A);
        let (val, _) = v.close_ledger(SimTime::ZERO, &mut rng).unwrap();
        assert_eq!(val.ledger_seq, 1);
        assert_eq!(v.counters().ledgers_created, 1);
        assert_eq!(v.counters().validations_out, 1);
    }

    #[test]
    fn early_close_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut v = validator(A);
        v.schedule_first_close(SimTime::ZERO, &mut rng);
        assert!(v.close_ledger(SimTime::from_millis(10), &mut rng).is_err());
    }

    #[test]
    fn first_copy_then_duplicate() {
        let mut v = validator(B);
        assert_eq!(v.on_validation_received(&val_from(A, 7), SimTime::ZERO), Received::FirstCopy);
        assert_eq!(v.on_validation_received(&val_from(A, 7), SimTime::ZERO), Received::Duplicate);
        assert_eq!(v.counters().validations_in, 2);
        assert_eq!(v.arrivals()[&A].len(), 1);
    }

    #[test]
    fn untrusted_sender_not_recorded() {
        let mut v = validator(B);
        let outsider = val_from(NodeId(99), 1);
        assert_eq!(v.on_validation_received(&outsider, SimTime::ZERO), Received::Untrusted);
        assert_eq!(v.on_validation_received(&outsider, SimTime::ZERO), Received::Untrusted);
        assert_eq!(v.counters().untrusted, 2);
        assert!(v.arrivals().is_empty());
    }

    #[test]
    fn quorum_with_own_plus_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut v = validator(A);
        v.close_ledger(SimTime::ZERO, &mut rng).unwrap();
        v.on_validation_received(&val_from(B, 1), SimTime::ZERO);
        assert!(!v.check_quorum(1, SimTime::ZERO));
        v.on_validation_received(&val_from(C, 1), SimTime::from_millis(5));
        assert!(v.check_quorum(1, SimTime::from_millis(5)));
        assert_eq!(v.validated_ledgers(), &[(1, SimTime::from_millis(5))]);
        // monotone
        assert!(v.check_quorum(1, SimTime::from_millis(9)));
        assert_eq!(v.validated_ledgers().len(), 1);
    }

    #[test]
    fn mismatched_hash_does_not_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut v = validator(A);
        v.close_ledger(SimTime::ZERO, &mut rng).unwrap();
        v.on_validation_received(&val_from(B, 1), SimTime::ZERO);
        let mut bad = val_from(C, 1);
        bad.ledger_hash = ledger_hash(2);
        assert_eq!(v.on_validation_received(&bad, SimTime::ZERO), Received::FirstCopy);
        assert!(!v.check_quorum(1, SimTime::ZERO));
    }

    #[test]
    fn flood_relay_set_difference() {
        let peers_of_y = BTreeSet::from([A, C]);
        let mut y = validator(B);
        let v = val_from(A, 1);
        let r = y.on_validation_received(&v, SimTime::ZERO);
        assert_eq!(y.flood_relay(r, &v, A, &peers_of_y), BTreeSet::from([C]));
        assert_eq!(y.counters().validations_out, 1);

        let mut z = validator(C);
        let r = z.on_validation_received(&v, SimTime::ZERO);
        z.flood_relay(r, &v, A, &BTreeSet::from([A, B]));
        let r = z.on_validation_received(&v, SimTime::from_millis(5));
        assert!(z.flood_relay(r, &v, B, &BTreeSet::from([A, B])).is_empty());
    }
}
