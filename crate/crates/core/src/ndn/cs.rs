// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DataPacket, Name};
use crate::time::SimTime;

pub const DEFAULT_CS_CAPACITY: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: u64,
}

#[derive(Clone, Debug)]
struct CsEntry {
    data: DataPacket,
    expires_at: SimTime,
}

/// Per-node Data cache.
///
/// An entry is served only while `now < expires_at`. When full, the entry with
/// the earliest expiry is evicted, ties broken by the smallest name.
#[derive(Clone, Debug)]
pub struct ContentStore {
    entries: BTreeMap<Name, CsEntry>,
    by_expiry: BTreeSet<(SimTime, Name)>,
    capacity: usize,
    stats: CsStats,
}

impl Default for ContentStore {
    fn default() -> Self {
        Self::new(DEFAULT_CS_CAPACITY)
    }
}

impl ContentStore {
    pub fn new(capacity: usize) -> Self {
        Self {
            entries: BTreeMap::new(),
            by_expiry: BTreeSet::new(),
            capacity,
            stats: CsStats::default(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn stats(&self) -> CsStats {
        CsStats {
            entries: self.entries.len() as u64,
            ..self.stats
        }
    }

    pub fn lookup(&mut self, name: &Name, now: SimTime) -> Option<DataPacket> {
        match self.entries.get(name) {
            Some(e) if now < e.expires_at => {
                self.stats.hits += 1;
                Some(e.data.clone())
            }
            _ => {
                self.stats.misses += 1;
                None
            }
        }
    }

    pub fn insert(&mut self, data: DataPacket, now: SimTime) {
        if self.capacity == 0 {
            return;
        }
        self.purge_expired(now);
        let name = data.name().clone();
        let expires_at = now + data.freshness();
        if let Some(old) = self.entries.remove(&name) {
            self.by_expiry.remove(&(old.expires_at, name.clone()));
        }
        while self.entries.len() >= self.capacity {
            let Some(victim) = self.by_expiry.pop_first() else {
                break;
            };
            self.entries.remove(&victim.1);
        }
        self.by_expiry.insert((expires_at, name.clone()));
        self.entries.insert(name, CsEntry { data, expires_at });
    }

    /// Drops entries that can no longer be served. Entries expiring exactly
    /// at `now` are gone.
    fn purge_expired(&mut self, now: SimTime) {
        while let Some((exp, _)) = self.by_expiry.first() {
            if *exp > now {
                break;
            }
            let (_, name) = self.by_expiry.pop_first().expect("non-empty");
            self.entries.remove(&name);
        }
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, name: &Name) -> bool {
        self.entries.contains_key(name)
    }
}

#[cfg(test)]
mod tests {
    use std::time::Duration;

    use super::*;
    use crate::NodeId;

    fn data(name: &str, freshness_s: u64) -> DataPacket {
        DataPacket::new(
            name.parse().unwrap(),
            vec![1],
            Duration::from_secs(freshness_s),
            NodeId(9),
        )
        .unwrap()
    }

    fn secs(s: u64) -> SimTime {
        SimTime::from_millis(s * 1000)
    }

    #[test]
    fn lookup_on_empty_store_misses() {
        let mut cs = ContentStore::default();
        assert!(cs.lookup(&"/a".parse().unwrap(), SimTime::ZERO).is_none());
        assert_eq!(cs.stats().misses, 1);
        assert_eq!(cs.stats().hits, 0);
    }

    #[test]
    fn unexpired_entry_hits() {
        let mut cs = ContentStore::default();
        let d = data("/a", 10);
        cs.insert(d.clone(), secs(0));
        assert_eq!(cs.lookup(d.name(), secs(5)), Some(d));
        assert_eq!(cs.stats().hits, 1);
    }

    #[test]
    fn expired_entry_misses() {
        let mut cs = ContentStore::default();
        let d = data("/a", 10);
        cs.insert(d.clone(), secs(0));
        assert!(cs.lookup(d.name(), secs(11)).is_none());
        // expiry boundary is exclusive
        assert!(cs.lookup(d.name(), secs(10)).is_none());
    }

    #[test]
    fn capacity_one_evicts_older() {
        let mut cs = ContentStore::new(1);
        cs.insert(data("/a", 10), secs(0));
        cs.insert(data("/b", 10), secs(1));
        assert_eq!(cs.len(), 1);
        assert!(cs.contains(&"/b".parse().unwrap()));
        assert!(!cs.contains(&"/a".parse().unwrap()));
    }

    #[test]
    fn eviction_tie_breaks_on_name() {
        let mut cs = ContentStore::new(2);
        cs.insert(data("/b", 10), secs(0));
        cs.insert(data("/a", 10), secs(0));
        cs.insert(data("/c", 20), secs(0));
        assert!(cs.contains(&"/b".parse().unwrap()));
        assert!(!cs.contains(&"/a".parse().unwrap()));
    }

    #[test]
    fn reinsert_refreshes_single_entry() {
        let mut cs = ContentStore::default();
        cs.insert(data("/a", 10), secs(0));
        cs.insert(data("/a", 10), secs(8));
        assert_eq!(cs.len(), 1);
        assert!(cs.lookup(&"/a".parse().unwrap(), secs(15)).is_some());
    }

    #[test]
    fn zero_freshness_is_never_served() {
        let mut cs = ContentStore::default();
        let d = data("/a", 0);
        cs.insert(d.clone(), secs(3));
        assert!(cs.lookup(d.name(), secs(3)).is_none());
    }
}
