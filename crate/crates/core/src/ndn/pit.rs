// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use super::{FaceId, InterestPacket, Name};
use crate::time::SimTime;

/// Outcome of recording an Interest in the PIT.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PitInsert {
    /// No live entry existed; one was created and the Interest should be forwarded.
    New,
    /// A live entry existed; the downstream face was added and nothing is forwarded.
    Aggregated,
    /// The nonce was already recorded for this name, i.e. the Interest looped.
    DuplicateNonce,
}

#[derive(Clone, Debug)]
struct PitEntry {
    faces: BTreeSet<FaceId>,
    nonces: BTreeSet<u64>,
    expires_at: SimTime,
}

const PURGE_EVERY: usize = 1024;

#[derive(Clone, Debug, Default)]
pub struct PendingInterestTable {
    entries: BTreeMap<Name, PitEntry>,
    inserts_since_purge: usize,
}

impl PendingInterestTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, interest: &InterestPacket, downstream: FaceId, now: SimTime) -> PitInsert {
        self.inserts_since_purge += 1;
        if self.inserts_since_purge >= PURGE_EVERY {
            self.purge_expired(now);
        }
        let name = interest.name();
        match self.entries.get_mut(name) {
            Some(e) if now < e.expires_at => {
                if !e.nonces.insert(interest.nonce()) {
                    return PitInsert::DuplicateNonce;
                }
                e.faces.insert(downstream);
                PitInsert::Aggregated
            }
            _ => {
                self.entries.insert(
                    name.clone(),
                    PitEntry {
                        faces: BTreeSet::from([downstream]),
                        nonces: BTreeSet::from([interest.nonce()]),
                        expires_at: now + interest.lifetime(),
                    },
                );
                PitInsert::New
            }
        }
    }

    /// Removes the entry for `name` and returns its downstream faces. Missing
    /// or expired entries yield an empty set.
    pub fn consume(&mut self, name: &Name, now: SimTime) -> BTreeSet<FaceId> {
        match self.entries.remove(name) {
            Some(e) if now < e.expires_at => e.faces,
            _ => BTreeSet::new(),
        }
    }

    pub fn contains_live(&self, name: &Name, now: SimTime) -> bool {
        self.entries.get(name).is_some_and(|e| now < e.expires_at)
    }

    pub fn live_len(&self, now: SimTime) -> usize {
        self.entries.values().filter(|e| now < e.expires_at).count()
    }

    fn purge_expired(&mut self, now: SimTime) {
        self.entries.retain(|_, e| now < e.expires_at);
        self.inserts_since_purge = 0;
    }
}

#[cfg(test)]
mod tests {
    use std::time::Duration;

    use super::*;

    fn interest(name: &str, nonce: u64) -> InterestPacket {
        InterestPacket::new(name.parse().unwrap(), nonce, Duration::from_secs(4)).unwrap()
    }

    #[test]
    fn first_interest_is_new() {
        let mut pit = PendingInterestTable::new();
        assert_eq!(pit.insert(&interest("/a/b", 1), FaceId(1), SimTime::ZERO), PitInsert::New);
    }

    #[test]
    fn second_interest_is_aggregated() {
        let mut pit = PendingInterestTable::new();
        pit.insert(&interest("/a/b", 1), FaceId(1), SimTime::ZERO);
        assert_eq!(
            pit.insert(&interest("/a/b", 2), FaceId(3), SimTime::ZERO),
            PitInsert::Aggregated
        );
        let faces = pit.consume(&"/a/b".parse().unwrap(), SimTime::ZERO);
        assert_eq!(faces, BTreeSet::from([FaceId(1), FaceId(3)]));
        assert!(!pit.contains_live(&"/a/b".parse().unwrap(), SimTime::ZERO));
    }

    #[test]
    fn looped_nonce_is_duplicate() {
        let mut pit = PendingInterestTable::new();
        let i = interest("/a/b", 7);
        pit.insert(&i, FaceId(1), SimTime::ZERO);
        assert_eq!(pit.insert(&i, FaceId(2), SimTime::ZERO), PitInsert::DuplicateNonce);
        // the looping face was not recorded
        assert_eq!(
            pit.consume(i.name(), SimTime::ZERO),
            BTreeSet::from([FaceId(1)])
        );
    }

    #[test]
    fn face_recorded_once() {
        let mut pit = PendingInterestTable::new();
        pit.insert(&interest("/a", 1), FaceId(1), SimTime::ZERO);
        pit.insert(&interest("/a", 2), FaceId(1), SimTime::ZERO);
        assert_eq!(pit.consume(&"/a".parse().unwrap(), SimTime::ZERO).len(), 1);
    }

    #[test]
    fn consume_without_entry_is_empty() {
        let mut pit = PendingInterestTable::new();
        assert!(pit.consume(&"/x".parse().unwrap(), SimTime::ZERO).is_empty());
    }

    #[test]
    fn expired_entry_consumes_empty() {
        let mut pit = PendingInterestTable::new();
        pit.insert(&interest("/a", 1), FaceId(1), SimTime::ZERO);
        let later = SimTime::from_millis(4_001);
        assert!(pit.consume(&"/a".parse().unwrap(), later).is_empty());
    }

    #[test]
    fn expired_entry_is_replaced() {
        let mut pit = PendingInterestTable::new();
        pit.insert(&interest("/a", 1), FaceId(1), SimTime::ZERO);
        let later = SimTime::from_millis(4_000);
        assert_eq!(pit.insert(&interest("/a", 1), FaceId(2), later), PitInsert::New);
    }
}
