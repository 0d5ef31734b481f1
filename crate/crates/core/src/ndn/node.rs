// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    ContentStore, CsStats, DataPacket, FaceId, ForwardingInformationBase, InterestPacket, Name,
    PendingInterestTable, PitInsert, Strategy,
};
use crate::time::SimTime;
use crate::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DropReason {
    DuplicateNonce,
    NoRoute,
    Unsolicited,
}

/// One step of the forwarding pipeline's output, in the order produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Effect {
    SendInterest(FaceId, InterestPacket),
    SendData(FaceId, DataPacket),
    DeliverToApp(InterestPacket),
    StoreInCs,
    Drop(DropReason),
}

impl Effect {
    pub fn is_send_interest(&self) -> bool {
        matches!(self, Effect::SendInterest(..))
    }

    /// The outgoing face, for send effects.
    pub fn face(&self) -> Option<FaceId> {
        match self {
            Effect::SendInterest(f, _) | Effect::SendData(f, _) => Some(*f),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForwarderCounters {
    pub interests_in: u64,
    pub data_in: u64,
    pub aggregated: u64,
    pub duplicate_nonce: u64,
    pub no_route: u64,
    pub unsolicited: u64,
}

const DEAD_NONCE_PURGE_AT: usize = 4096;

/// Forwarding state of a single NDN node: CS, PIT, FIB and the prefixes
/// answered by the co-located application (reached through [`FaceId::APP`]).
#[derive(Clone, Debug)]
pub struct NdnNodeState {
    node_id: NodeId,
    pub cs: ContentStore,
    pub pit: PendingInterestTable,
    pub fib: ForwardingInformationBase,
    local_producers: BTreeSet<Name>,
    dead_nonces: HashMap<(Name, u64), SimTime>,
    counters: ForwarderCounters,
}

impl NdnNodeState {
    pub fn new(node_id: NodeId, cs_capacity: usize) -> Self {
        Self {
            node_id,
            cs: ContentStore::new(cs_capacity),
            pit: PendingInterestTable::new(),
            fib: ForwardingInformationBase::new(),
            local_producers: BTreeSet::new(),
            dead_nonces: HashMap::new(),
            counters: ForwarderCounters::default(),
        }
    }

    pub fn node_id(&self) -> NodeId {
        self.node_id
    }

    pub fn counters(&self) -> ForwarderCounters {
        self.counters
    }

    pub fn cs_stats(&self) -> CsStats {
        self.cs.stats()
    }

    pub fn register_local_prefix(&mut self, prefix: Name) {
        self.local_producers.insert(prefix);
    }

    pub fn local_prefixes(&self) -> impl Iterator<Item = &Name> {
        self.local_producers.iter()
    }

    fn is_local(&self, name: &Name) -> bool {
        self.local_producers.iter().any(|p| p.is_prefix_of(name))
    }

    /// Records `(name, nonce)` and reports whether it had already been seen
    /// within its lifetime.
    fn seen_nonce(&mut self, interest: &InterestPacket, now: SimTime) -> bool {
        if self.dead_nonces.len() >= DEAD_NONCE_PURGE_AT {
            self.dead_nonces.retain(|_, exp| now < *exp);
        }
        let key = (interest.name().clone(), interest.nonce());
        match self.dead_nonces.get(&key) {
            Some(exp) if now < *exp => true,
            _ => {
                self.dead_nonces.insert(key, now + interest.lifetime());
                false
            }
        }
    }

    pub fn on_interest(&mut self, interest: InterestPacket, from: FaceId, now: SimTime) -> Vec<Effect> {
        self.counters.interests_in += 1;
        if self.seen_nonce(&interest, now) {
            self.counters.duplicate_nonce += 1;
            return vec![Effect::Drop(DropReason::DuplicateNonce)];
        }

        // Piggybacked payload on a multicast prefix: hand to the app and keep
        // spreading. CS and PIT are never involved since no Data will follow.
        if interest.app_parameters().is_some() {
            if let Some(m) = self.fib.lookup(interest.name()) {
                if m.strategy == Strategy::Multicast {
                    let hops = m.next_hops(from);
                    let mut effects = Vec::with_capacity(hops.len() + 1);
                    if from != FaceId::APP && self.is_local(interest.name()) {
                        effects.push(Effect::DeliverToApp(interest.clone()));
                    }
                    effects.extend(hops.into_iter().map(|f| Effect::SendInterest(f, interest.clone())));
                    return effects;
                }
            }
        }

        if let Some(data) = self.cs.lookup(interest.name(), now) {
            return vec![Effect::SendData(from, data)];
        }

        match self.pit.insert(&interest, from, now) {
            PitInsert::New => {}
            PitInsert::Aggregated => {
                self.counters.aggregated += 1;
                return Vec::new();
            }
            PitInsert::DuplicateNonce => {
                self.counters.duplicate_nonce += 1;
                return vec![Effect::Drop(DropReason::DuplicateNonce)];
            }
        }

        if from != FaceId::APP && self.is_local(interest.name()) {
            return vec![Effect::DeliverToApp(interest)];
        }

        let hops = self
            .fib
            .lookup(interest.name())
            .map(|m| m.next_hops(from))
            .unwrap_or_default();
        if hops.is_empty() {
            self.counters.no_route += 1;
            return vec![Effect::Drop(DropReason::NoRoute)];
        }
        hops.into_iter()
            .map(|f| Effect::SendInterest(f, interest.clone()))
            .collect()
    }

    pub fn on_data(&mut self, data: DataPacket, from: FaceId, now: SimTime) -> Vec<Effect> {
        self.counters.data_in += 1;
        let faces = self.pit.consume(data.name(), now);
        if faces.is_empty() {
            self.counters.unsolicited += 1;
            return vec![Effect::Drop(DropReason::Unsolicited)];
        }
        // zero freshness could never be served, so it is not cached at all
        if !data.freshness().is_zero() {
            self.cs.insert(data.clone(), now);
        }
        let mut effects = Vec::with_capacity(faces.len() + 1);
        effects.push(Effect::StoreInCs);
        effects.extend(
            faces
                .into_iter()
                .filter(|f| *f != from)
                .map(|f| Effect::SendData(f, data.clone())),
        );
        effects
    }
}
