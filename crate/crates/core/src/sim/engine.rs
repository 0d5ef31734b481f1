// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::Duration;

use log::{debug, trace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    build_topology, EventLog, LinkId, LogRecord, Packet, Scheduler, SimError, Topology, TopologyKind,
    DEFAULT_LINK_LATENCY,
};
use crate::metrics::{interarrival_deltas, nic_counters, summary, EncodingModel, MetricsReport, ReportInputs};
use crate::models::{
    announce_prefix, piggyback_prefix, producer_prefix, AppAction, AppConfig, AppTimer, ModelKind,
    PollingConfig, ValidatorApp, DEFAULT_VALIDATION_FRESHNESS,
};
use crate::ndn::{
    CsStats, DataPacket, Effect, FaceId, ForwarderCounters, InterestPacket, NdnNodeState, Strategy,
    DEFAULT_CS_CAPACITY, DEFAULT_INTEREST_LIFETIME,
};
use crate::time::SimTime;
use crate::xrpl::{ValidatorConfig, ValidatorCounters, ValidatorState, DEFAULT_PAYLOAD_SIZE};
use crate::NodeId;

const BITRATE_WINDOW: Duration = Duration::from_secs(300);
const PACKET_WINDOW: Duration = Duration::from_secs(600);
pub const DEFAULT_HIST_BIN_S: f64 = 0.05;

/// Everything that determines a run. Two runs with equal configs produce
/// identical logs and reports.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub topology: Topology,
    pub model: ModelKind,
    pub duration: Duration,
    pub seed: u64,
    pub ledger_interval: Duration,
    pub interval_jitter: Duration,
    pub payload_size: u32,
    /// Defaults to the full UNL.
    pub quorum: Option<usize>,
    pub polling: PollingConfig,
    pub interest_lifetime: Duration,
    pub validation_freshness: Duration,
    pub cs_capacity: usize,
    pub encoding: EncodingModel,
    pub hist_bin_s: f64,
    /// Label of the validator whose arrivals and interfaces are reported;
    /// defaults to the first validator.
    pub observer: Option<String>,
}

impl RunConfig {
    /// Defaults for `topology`: one hour, seed 0, 3 s ledgers without jitter.
    pub fn new(topology: Topology, model: ModelKind) -> Self {
        Self {
            topology,
            model,
            duration: Duration::from_secs(3600),
            seed: 0,
            ledger_interval: Duration::from_secs(3),
            interval_jitter: Duration::ZERO,
            payload_size: DEFAULT_PAYLOAD_SIZE,
            quorum: None,
            polling: PollingConfig::default(),
            interest_lifetime: DEFAULT_INTEREST_LIFETIME,
            validation_freshness: DEFAULT_VALIDATION_FRESHNESS,
            cs_capacity: DEFAULT_CS_CAPACITY,
            encoding: EncodingModel::default(),
            hist_bin_s: DEFAULT_HIST_BIN_S,
            observer: None,
        }
    }

    /// A preset topology with the default link latency.
    pub fn preset(kind: TopologyKind, model: ModelKind) -> Result<Self, SimError> {
        Ok(Self::new(build_topology(kind, DEFAULT_LINK_LATENCY)?, model))
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: &str| Err(SimError::BadConfig(m.to_string()));
        if self.duration.is_zero() {
            return bad("duration must be positive");
        }
        if self.interest_lifetime.is_zero() {
            return bad("interest_lifetime must be positive");
        }
        if !(self.hist_bin_s > 0.0) {
            return bad("hist_bin_s must be positive");
        }
        self.polling.validate()?;
        let nodes = self.topology.nodes();
        if !nodes.iter().any(|n| n.validator) {
            return bad("topology has no validators");
        }
        if self.model.uses_ndn() {
            if let Some(n) = nodes.iter().find(|n| !n.ndn) {
                return Err(SimError::BadConfig(format!(
                    "model {} needs NDN on every node, {:?} has none",
                    self.model, n.label
                )));
            }
        } else if let Some(n) = nodes.iter().find(|n| !n.validator) {
            return Err(SimError::BadConfig(format!(
                "model {} needs a validator on every node, {:?} has none",
                self.model, n.label
            )));
        }
        self.observer_id()?;
        Ok(())
    }

    fn observer_id(&self) -> Result<NodeId, SimError> {
        match &self.observer {
            None => Ok(self.topology.validators()[0]),
            Some(l) => match self.topology.node_by_label(l) {
                Some(id) if self.topology.node(id).validator => Ok(id),
                _ => Err(SimError::BadConfig(format!("observer {l:?} is not a validator"))),
            },
        }
    }
}

/// Final per-node state.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeStats {
    pub label: String,
    pub cs: Option<CsStats>,
    pub forwarder: Option<ForwarderCounters>,
    pub validator: Option<ValidatorCounters>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub log: EventLog,
    pub report: MetricsReport,
    /// The topology with its final link counters.
    pub topology: Topology,
    pub observer: NodeId,
    /// First-copy arrival times in seconds: observer label, then producer label.
    pub arrivals: BTreeMap<String, BTreeMap<String, Vec<f64>>>,
    pub nodes: Vec<NodeStats>,
}

impl RunOutput {
    pub fn observer_label(&self) -> &str {
        self.topology.label(self.observer)
    }

    /// Arrivals at the reported observer, keyed by producer label.
    pub fn observer_arrivals(&self) -> &BTreeMap<String, Vec<f64>> {
        &self.arrivals[self.observer_label()]
    }

    pub fn node(&self, label: &str) -> Option<&NodeStats> {
        self.nodes.iter().find(|n| n.label == label)
    }
}

#[derive(Clone, Debug)]
enum EventKind {
    LedgerClose(NodeId),
    PacketArrival { link: LinkId, to: NodeId, packet: Packet },
    TimerFire { node: NodeId, timer: AppTimer },
}

/// Node-local work triggered by one event, run to completion in FIFO order.
enum Work {
    Interest { node: NodeId, face: FaceId, interest: InterestPacket },
    Data { node: NodeId, face: FaceId, data: DataPacket },
    App { node: NodeId, action: AppAction },
}

#[derive(Default)]
struct NodeRt {
    ndn: Option<NdnNodeState>,
    app: Option<ValidatorApp>,
}

struct Sim<'a> {
    cfg: &'a RunConfig,
    topo: Topology,
    sched: Scheduler<EventKind>,
    rng: ChaCha8Rng,
    nodes: Vec<NodeRt>,
    log: EventLog,
    work: VecDeque<Work>,
}

/// Runs one simulation to `config.duration`. Events at or after the end
/// time are not executed.
pub fn run(config: &RunConfig) -> Result<RunOutput, SimError> {
    config.validate()?;
    let mut sim = Sim::new(config)?;
    sim.start()?;
    let end = SimTime::ZERO + config.duration;
    while let Some(t) = sim.sched.peek_time() {
        if t >= end {
            break;
        }
        let ev = sim.sched.pop().expect("peeked");
        sim.dispatch(ev.kind)?;
        sim.drain()?;
    }
    debug!(
        "run finished: {} transmissions, {} events pending",
        sim.log.len(),
        sim.sched.len()
    );
    sim.finish()
}

impl<'a> Sim<'a> {
    fn new(cfg: &'a RunConfig) -> Result<Self, SimError> {
        let topo = cfg.topology.clone();
        let validators = topo.validators();
        let unl: BTreeSet<NodeId> = validators.iter().copied().collect();
        let labels: BTreeMap<NodeId, String> = validators
            .iter()
            .map(|v| (*v, topo.label(*v).to_string()))
            .collect();
        let app_cfg = AppConfig {
            model: cfg.model,
            polling: cfg.polling,
            interest_lifetime: cfg.interest_lifetime,
            validation_freshness: cfg.validation_freshness,
        };
        let mut nodes: Vec<NodeRt> = topo.node_ids().map(|_| NodeRt::default()).collect();
        for id in topo.node_ids() {
            let spec = topo.node(id);
            if cfg.model.uses_ndn() {
                nodes[id.0 as usize].ndn = Some(NdnNodeState::new(id, cfg.cs_capacity));
            }
            if spec.validator {
                let mut vc = ValidatorConfig::new(unl.clone());
                vc.quorum = cfg.quorum.unwrap_or(unl.len());
                vc.ledger_interval = cfg.ledger_interval;
                vc.interval_jitter = cfg.interval_jitter;
                vc.payload_size = cfg.payload_size;
                let peers = topo.neighbors(id).filter(|n| unl.contains(n)).collect();
                let state = ValidatorState::new(id, vc)?;
                nodes[id.0 as usize].app = Some(ValidatorApp::new(state, app_cfg, labels.clone(), peers)?);
            }
        }
        let mut sim = Self {
            cfg,
            topo,
            sched: Scheduler::new(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            nodes,
            log: EventLog::new(),
            work: VecDeque::new(),
        };
        if cfg.model.uses_ndn() {
            sim.install_routes()?;
        }
        Ok(sim)
    }

    /// Unicast routes to each producer prefix along a shortest path (lowest
    /// face on ties); the multicast prefixes on every face that lies on a
    /// shortest path to some other validator.
    fn install_routes(&mut self) -> Result<(), SimError> {
        let mut multicast: BTreeMap<NodeId, BTreeSet<FaceId>> = BTreeMap::new();
        for v in self.topo.validators() {
            let prefix = producer_prefix(self.topo.label(v))?;
            let dist = self.topo.distances_to(v);
            for n in self.topo.node_ids() {
                let ndn = self.nodes[n.0 as usize].ndn.as_mut().expect("ndn node");
                if n == v {
                    ndn.register_local_prefix(prefix.clone());
                    continue;
                }
                let faces = self.topo.shortest_faces(n, v, &dist);
                if let Some(first) = faces.first() {
                    ndn.fib.register(prefix.clone(), *first, Strategy::Unicast);
                }
                multicast.entry(n).or_default().extend(faces);
            }
        }
        for (n, faces) in multicast {
            let ndn = self.nodes[n.0 as usize].ndn.as_mut().expect("ndn node");
            for f in faces {
                ndn.fib.register(announce_prefix(), f, Strategy::Multicast);
                ndn.fib.register(piggyback_prefix(), f, Strategy::Multicast);
            }
        }
        for v in self.topo.validators() {
            let ndn = self.nodes[v.0 as usize].ndn.as_mut().expect("ndn node");
            ndn.register_local_prefix(announce_prefix());
            ndn.register_local_prefix(piggyback_prefix());
        }
        Ok(())
    }

    fn now(&self) -> SimTime {
        self.sched.now()
    }

    fn app(&mut self, node: NodeId) -> Option<&mut ValidatorApp> {
        self.nodes[node.0 as usize].app.as_mut()
    }

    fn start(&mut self) -> Result<(), SimError> {
        let now = self.now();
        for v in self.topo.validators() {
            let rt = &mut self.nodes[v.0 as usize];
            let first = rt.app.as_mut().expect("validator").schedule_first_close(now, &mut self.rng);
            self.sched.schedule(first, EventKind::LedgerClose(v))?;
        }
        for v in self.topo.validators() {
            let rt = &mut self.nodes[v.0 as usize];
            let actions = rt.app.as_mut().expect("validator").start(now, &mut self.rng)?;
            self.queue_actions(v, actions);
        }
        self.drain()
    }

    fn queue_actions(&mut self, node: NodeId, actions: Vec<AppAction>) {
        self.work
            .extend(actions.into_iter().map(|action| Work::App { node, action }));
    }

    fn dispatch(&mut self, kind: EventKind) -> Result<(), SimError> {
        let now = self.now();
        match kind {
            EventKind::LedgerClose(v) => {
                let rt = &mut self.nodes[v.0 as usize];
                let app = rt.app.as_mut().expect("validator");
                let (actions, next) = app.on_ledger_close(now, &mut self.rng)?;
                trace!("{now}: {} closed ledger {}", self.topo.label(v), app.validator().current_seq());
                self.sched.schedule(next, EventKind::LedgerClose(v))?;
                self.queue_actions(v, actions);
            }
            EventKind::PacketArrival { link, to, packet } => {
                let face = self.topo.face_for_link(to, link).expect("link endpoint");
                match packet {
                    Packet::Interest(interest) => self.work.push_back(Work::Interest {
                        node: to,
                        face,
                        interest,
                    }),
                    Packet::Data(data) => self.work.push_back(Work::Data { node: to, face, data }),
                    Packet::Validation(val) => {
                        let from = self.topo.link(link).other(to).expect("link endpoint");
                        if let Some(app) = self.app(to) {
                            let actions = app.on_peer_validation(&val, from, now);
                            self.queue_actions(to, actions);
                        }
                    }
                }
            }
            EventKind::TimerFire { node, timer } => {
                let rt = &mut self.nodes[node.0 as usize];
                if let Some(app) = rt.app.as_mut() {
                    let actions = app.on_timer(&timer, now, &mut self.rng)?;
                    self.queue_actions(node, actions);
                }
            }
        }
        Ok(())
    }

    fn drain(&mut self) -> Result<(), SimError> {
        let now = self.now();
        while let Some(w) = self.work.pop_front() {
            match w {
                Work::Interest { node, face, interest } => {
                    let Some(ndn) = self.nodes[node.0 as usize].ndn.as_mut() else {
                        continue;
                    };
                    let effects = ndn.on_interest(interest, face, now);
                    self.apply_effects(node, effects)?;
                }
                Work::Data { node, face, data } => {
                    let Some(ndn) = self.nodes[node.0 as usize].ndn.as_mut() else {
                        continue;
                    };
                    let effects = ndn.on_data(data, face, now);
                    self.apply_effects(node, effects)?;
                }
                Work::App { node, action } => match action {
                    AppAction::Express(interest) => self.work.push_back(Work::Interest {
                        node,
                        face: FaceId::APP,
                        interest,
                    }),
                    AppAction::Put(data) => self.work.push_back(Work::Data {
                        node,
                        face: FaceId::APP,
                        data,
                    }),
                    AppAction::SendToPeer(peer, val) => {
                        let link = self.topo.link_between(node, peer).ok_or_else(|| {
                            SimError::BadTopology(format!(
                                "{} has no link to {}",
                                self.topo.label(node),
                                self.topo.label(peer)
                            ))
                        })?;
                        self.transmit(node, link, Packet::Validation(val))?;
                    }
                    AppAction::Timer(delay, timer) => {
                        self.sched.schedule(now + delay, EventKind::TimerFire { node, timer })?;
                    }
                },
            }
        }
        Ok(())
    }

    fn apply_effects(&mut self, node: NodeId, effects: Vec<Effect>) -> Result<(), SimError> {
        let now = self.now();
        for e in effects {
            match e {
                Effect::SendInterest(face, interest) => self.send_on_face(node, face, Packet::Interest(interest))?,
                Effect::SendData(FaceId::APP, data) => {
                    let rt = &mut self.nodes[node.0 as usize];
                    if let Some(app) = rt.app.as_mut() {
                        let actions = app.on_data(&data, now, &mut self.rng)?;
                        self.queue_actions(node, actions);
                    }
                }
                Effect::SendData(face, data) => self.send_on_face(node, face, Packet::Data(data))?,
                Effect::DeliverToApp(interest) => {
                    let rt = &mut self.nodes[node.0 as usize];
                    if let Some(app) = rt.app.as_mut() {
                        let actions = app.on_interest(&interest, now, &mut self.rng)?;
                        self.queue_actions(node, actions);
                    }
                }
                Effect::StoreInCs => {}
                Effect::Drop(reason) => trace!("{now}: {} dropped packet: {reason:?}", self.topo.label(node)),
            }
        }
        Ok(())
    }

    fn send_on_face(&mut self, node: NodeId, face: FaceId, packet: Packet) -> Result<(), SimError> {
        let link = self
            .topo
            .face(node, face)
            .ok_or_else(|| SimError::BadTopology(format!("{} has no face {}", self.topo.label(node), face.0)))?
            .link;
        self.transmit(node, link, packet)
    }

    /// Puts `packet` on `link`, accounts for it and schedules its arrival.
    fn transmit(&mut self, from: NodeId, link: LinkId, packet: Packet) -> Result<(), SimError> {
        let now = self.now();
        let bytes = self.cfg.encoding.packet_size(&packet);
        let l = self.topo.link_mut(link);
        let to = l.other(from).expect("link endpoint");
        l.count(from, bytes);
        let latency = l.latency;
        let name = match &packet {
            Packet::Interest(i) => i.name().to_string(),
            Packet::Data(d) => d.name().to_string(),
            Packet::Validation(v) => format!("/validation/{}/{}", self.topo.label(v.validator_id), v.ledger_seq),
        };
        self.log.push(LogRecord {
            time: now,
            link,
            from,
            to,
            kind: packet.kind(),
            name,
            bytes,
        });
        self.sched
            .schedule(now + latency, EventKind::PacketArrival { link, to, packet })?;
        Ok(())
    }

    fn finish(self) -> Result<RunOutput, SimError> {
        let cfg = self.cfg;
        let observer = cfg.observer_id()?;
        let mut arrivals = BTreeMap::new();
        let mut validators = BTreeMap::new();
        let mut nodes = Vec::with_capacity(self.nodes.len());
        let mut cs_total: Option<CsStats> = None;
        for (i, rt) in self.nodes.iter().enumerate() {
            let id = NodeId(i as u32);
            let label = self.topo.label(id).to_string();
            if let Some(app) = &rt.app {
                let per_producer: BTreeMap<String, Vec<f64>> = app
                    .validator()
                    .arrivals()
                    .iter()
                    .map(|(p, s)| (self.topo.label(*p).to_string(), s.secs()))
                    .collect();
                arrivals.insert(label.clone(), per_producer);
                validators.insert(label.clone(), app.validator().counters());
            }
            if let Some(ndn) = &rt.ndn {
                let s = ndn.cs_stats();
                let t = cs_total.get_or_insert_with(CsStats::default);
                t.hits += s.hits;
                t.misses += s.misses;
                t.entries += s.entries;
            }
            nodes.push(NodeStats {
                label,
                cs: rt.ndn.as_ref().map(NdnNodeState::cs_stats),
                forwarder: rt.ndn.as_ref().map(NdnNodeState::counters),
                validator: rt.app.as_ref().map(|a| a.validator().counters()),
            });
        }
        let observer_label = self.topo.label(observer).to_string();
        let deltas: Vec<f64> = arrivals[&observer_label]
            .values()
            .flat_map(|secs| interarrival_deltas(secs))
            .collect();
        let start = SimTime::ZERO;
        let bitrate_end = start + cfg.duration.min(BITRATE_WINDOW);
        let packet_window = cfg.duration.min(PACKET_WINDOW);
        let report = summary(ReportInputs {
            model: cfg.model,
            topology: self.topo.kind(),
            seed: cfg.seed,
            duration: cfg.duration,
            observer: observer_label,
            deltas,
            validators,
            bitrate_window: Some(nic_counters(&self.log, observer, start, bitrate_end)),
            packet_window: Some((
                nic_counters(&self.log, observer, start, start + packet_window),
                packet_window,
            )),
            cs: cs_total,
            hist_bin_s: cfg.hist_bin_s,
        })?;
        Ok(RunOutput {
            log: self.log,
            report,
            topology: self.topo,
            observer,
            arrivals,
            nodes,
        })
    }
}
