// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use rand::Rng;

use super::{
    namespace, parse_name, ModelError, ModelKind, NameKind, ParsedName, PollingConfig, SequenceRecord,
    DEFAULT_VALIDATION_FRESHNESS,
};
use crate::ndn::{DataPacket, InterestPacket, Name, DEFAULT_INTEREST_LIFETIME};
use crate::time::SimTime;
use crate::xrpl::{Received, Validation, ValidatorState};
use crate::NodeId;

/// Model parameters shared by every validator in a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AppConfig {
    pub model: ModelKind,
    pub polling: PollingConfig,
    pub interest_lifetime: Duration,
    pub validation_freshness: Duration,
}

impl AppConfig {
    pub fn new(model: ModelKind) -> Self {
        Self {
            model,
            polling: PollingConfig::default(),
            interest_lifetime: DEFAULT_INTEREST_LIFETIME,
            validation_freshness: DEFAULT_VALIDATION_FRESHNESS,
        }
    }
}

/// What the application asks of its node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AppAction {
    /// Hand an Interest to the local forwarder.
    Express(InterestPacket),
    /// Answer a pending Interest through the local forwarder.
    Put(DataPacket),
    /// Send a raw validation to a flooding peer.
    SendToPeer(NodeId, Validation),
    /// Call back after the delay.
    Timer(Duration, AppTimer),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AppTimer {
    Poll(NodeId),
    InterestExpiry { name: Name, nonce: u64 },
}

pub type Actions = Vec<AppAction>;

/// A validator together with the model-specific producer and consumer
/// logic that moves its validations.
#[derive(Clone, Debug)]
pub struct ValidatorApp {
    pub(super) validator: ValidatorState,
    pub(super) cfg: AppConfig,
    labels: BTreeMap<NodeId, String>,
    ids: BTreeMap<String, NodeId>,
    pub(super) peers: BTreeSet<NodeId>,
    pub(super) records: BTreeMap<NodeId, SequenceRecord>,
    /// Own validations by sequence, served to pulls.
    pub(super) store: BTreeMap<u64, Validation>,
    /// Interests for sequences not produced yet, with their expiry.
    pub(super) pending: BTreeMap<Name, SimTime>,
    /// Interests this app expressed and still waits on, by nonce.
    pub(super) outstanding: BTreeMap<Name, u64>,
}

impl ValidatorApp {
    /// `labels` names every validator of the run, this one included; `peers`
    /// are the directly linked validators used by flooding.
    pub fn new(
        validator: ValidatorState,
        cfg: AppConfig,
        labels: BTreeMap<NodeId, String>,
        peers: BTreeSet<NodeId>,
    ) -> Result<Self, ModelError> {
        cfg.polling.validate()?;
        for l in labels.values() {
            super::check_label(l)?;
        }
        let ids = labels.iter().map(|(id, l)| (l.clone(), *id)).collect();
        let records = labels
            .keys()
            .filter(|id| **id != validator.id())
            .map(|id| (*id, SequenceRecord::default()))
            .collect();
        Ok(Self {
            validator,
            cfg,
            labels,
            ids,
            peers,
            records,
            store: BTreeMap::new(),
            pending: BTreeMap::new(),
            outstanding: BTreeMap::new(),
        })
    }

    pub fn validator(&self) -> &ValidatorState {
        &self.validator
    }

    pub fn id(&self) -> NodeId {
        self.validator.id()
    }

    pub fn config(&self) -> &AppConfig {
        &self.cfg
    }

    pub fn record(&self, producer: NodeId) -> Option<&SequenceRecord> {
        self.records.get(&producer)
    }

    pub(super) fn label(&self, id: NodeId) -> &str {
        &self.labels[&id]
    }

    pub(super) fn own_label(&self) -> &str {
        self.label(self.id())
    }

    fn producer_id(&self, label: &str) -> Option<NodeId> {
        self.ids.get(label).copied()
    }

    /// Remote producers this validator consumes from.
    pub(super) fn producers(&self) -> Vec<NodeId> {
        self.records.keys().copied().collect()
    }

    /// Expresses a tracked Interest and arms its expiry timer.
    pub(super) fn express(&mut self, name: Name, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let nonce = rng.random::<u64>();
        let lifetime = self.cfg.interest_lifetime;
        let interest = InterestPacket::new(name.clone(), nonce, lifetime)?;
        self.outstanding.insert(name.clone(), nonce);
        Ok(vec![
            AppAction::Express(interest),
            AppAction::Timer(lifetime, AppTimer::InterestExpiry { name, nonce }),
        ])
    }

    pub(super) fn validation_data(&self, val: &Validation) -> Result<DataPacket, ModelError> {
        let name = namespace(Some(self.own_label()), NameKind::Validation, Some(val.ledger_seq))?;
        Ok(DataPacket::new(
            name,
            val.encode()?,
            self.cfg.validation_freshness,
            self.id(),
        )?)
    }

    /// Fetches every sequence of `producer` above the last one seen, up to
    /// `seq`, unless a fetch is already under way.
    pub(super) fn request_missing(
        &mut self,
        producer: NodeId,
        seq: u64,
        rng: &mut impl Rng,
    ) -> Result<Actions, ModelError> {
        let Some(rec) = self.records.get_mut(&producer) else {
            return Ok(Vec::new());
        };
        if seq <= rec.last_seen_seq || rec.outstanding_request.is_some() {
            return Ok(Vec::new());
        }
        let from = rec.last_seen_seq + 1;
        rec.outstanding_request = Some(seq);
        let label = self.label(producer).to_string();
        let mut actions = Vec::new();
        for s in from..=seq {
            let name = namespace(Some(&label), NameKind::Validation, Some(s))?;
            actions.extend(self.express(name, rng)?);
        }
        Ok(actions)
    }

    /// Hands a validation to the validator. First copies count toward
    /// quorum and, under flooding, are relayed.
    pub fn deliver_to_validator(
        &mut self,
        val: &Validation,
        from_peer: Option<NodeId>,
        now: SimTime,
    ) -> Actions {
        let outcome = self.validator.on_validation_received(val, now);
        if outcome != Received::FirstCopy {
            return Vec::new();
        }
        self.validator.check_quorum(val.ledger_seq, now);
        match (self.cfg.model, from_peer) {
            (ModelKind::Baseline, Some(from)) => self
                .validator
                .flood_relay(outcome, val, from, &self.peers)
                .into_iter()
                .map(|p| AppAction::SendToPeer(p, val.clone()))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Time of the first ledger close, one interval after `now`.
    pub fn schedule_first_close(&mut self, now: SimTime, rng: &mut impl Rng) -> SimTime {
        self.validator.schedule_first_close(now, rng)
    }

    /// Actions issued when the run starts.
    pub fn start(&mut self, now: SimTime, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let mut actions = Vec::new();
        for p in self.producers() {
            match self.cfg.model {
                ModelKind::Polling => actions.extend(self.polling_tick(p, now, rng)?),
                ModelKind::AdvanceRequest => actions.extend(self.advance_request(p, now, rng)?),
                _ => {}
            }
        }
        Ok(actions)
    }

    /// Closes a ledger and publishes the validation. Returns the actions and
    /// the time of the next close.
    pub fn on_ledger_close(&mut self, now: SimTime, rng: &mut impl Rng) -> Result<(Actions, SimTime), ModelError> {
        let (val, next) = self.validator.close_ledger(now, rng)?;
        self.validator.check_quorum(val.ledger_seq, now);
        self.store.insert(val.ledger_seq, val.clone());
        let actions = match self.cfg.model {
            ModelKind::Baseline => self.broadcast(&val),
            ModelKind::Polling => Vec::new(),
            ModelKind::AnnouncePull => self.announce(&val, rng)?,
            ModelKind::AdvanceRequest => self.serve_pending(&val, now)?,
            ModelKind::Piggyback => self.piggyback_send(&val, rng)?,
        };
        Ok((actions, next))
    }

    /// An Interest the forwarder delivered to this application.
    pub fn on_interest(
        &mut self,
        interest: &InterestPacket,
        now: SimTime,
        rng: &mut impl Rng,
    ) -> Result<Actions, ModelError> {
        let Some(parsed) = parse_name(interest.name()) else {
            return Ok(Vec::new());
        };
        match parsed {
            ParsedName::Latest { producer } if producer == self.own_label() => self.answer_latest(interest),
            ParsedName::Validation { producer, seq } if producer == self.own_label() => {
                self.answer_validation(interest, seq, now)
            }
            ParsedName::Announce { producer, seq } => match self.producer_id(producer) {
                Some(p) if p != self.id() => self.on_announce(p, seq, rng),
                _ => Ok(Vec::new()),
            },
            ParsedName::Piggyback => self.on_piggyback(interest, now),
            _ => Ok(Vec::new()),
        }
    }

    fn answer_validation(
        &mut self,
        interest: &InterestPacket,
        seq: u64,
        now: SimTime,
    ) -> Result<Actions, ModelError> {
        if let Some(val) = self.store.get(&seq) {
            return Ok(vec![AppAction::Put(self.validation_data(val)?)]);
        }
        if seq > self.validator.current_seq() {
            self.hold_pending(interest, now);
        }
        Ok(Vec::new())
    }

    /// Data that came back for an Interest this application expressed.
    pub fn on_data(&mut self, data: &DataPacket, now: SimTime, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        self.outstanding.remove(data.name());
        let Some(parsed) = parse_name(data.name()) else {
            return Ok(Vec::new());
        };
        match parsed {
            ParsedName::Latest { producer } => {
                let Some(p) = self.producer_id(producer) else {
                    return Ok(Vec::new());
                };
                let bytes: [u8; 8] = data
                    .content()
                    .try_into()
                    .map_err(|_| ModelError::BadContent(data.name().clone()))?;
                self.on_latest_seq_data(p, u64::from_be_bytes(bytes), now, rng)
            }
            ParsedName::Validation { producer, seq } => {
                let Some(p) = self.producer_id(producer) else {
                    return Ok(Vec::new());
                };
                let val = Validation::decode(data.content())?;
                if val.validator_id != p || val.ledger_seq != seq {
                    return Err(ModelError::BadContent(data.name().clone()));
                }
                let mut actions = self.deliver_to_validator(&val, None, now);
                if let Some(rec) = self.records.get_mut(&p) {
                    rec.last_seen_seq = rec.last_seen_seq.max(seq);
                    if rec.outstanding_request.is_some_and(|o| seq >= o) {
                        rec.outstanding_request = None;
                    }
                }
                if self.cfg.model == ModelKind::AdvanceRequest {
                    actions.extend(self.advance_request(p, now, rng)?);
                }
                Ok(actions)
            }
            _ => Ok(Vec::new()),
        }
    }

    pub fn on_timer(&mut self, timer: &AppTimer, now: SimTime, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        match timer {
            AppTimer::Poll(p) => self.polling_tick(*p, now, rng),
            AppTimer::InterestExpiry { name, nonce } => {
                if self.outstanding.get(name) != Some(nonce) {
                    return Ok(Vec::new());
                }
                self.outstanding.remove(name);
                self.on_interest_timeout(name.clone(), rng)
            }
        }
    }

    fn on_interest_timeout(&mut self, name: Name, rng: &mut impl Rng) -> Result<Actions, ModelError> {
        let Some(parsed) = parse_name(&name) else {
            return Ok(Vec::new());
        };
        match parsed {
            ParsedName::Latest { producer } => match self.producer_id(producer) {
                Some(p) => Ok(self.schedule_next_poll(p)),
                None => Ok(Vec::new()),
            },
            ParsedName::Validation { producer, seq } => {
                let Some(p) = self.producer_id(producer) else {
                    return Ok(Vec::new());
                };
                if self.cfg.model == ModelKind::AdvanceRequest {
                    // same sequence, fresh nonce
                    return self.express(name, rng);
                }
                if let Some(rec) = self.records.get_mut(&p) {
                    if rec.outstanding_request.is_some_and(|o| seq <= o) {
                        rec.outstanding_request = None;
                    }
                }
                Ok(Vec::new())
            }
            _ => Ok(Vec::new()),
        }
    }
}
