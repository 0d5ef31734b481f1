// SPDX-License-Identifier: Apache-2.0

//! Dissemination-model invariants checked on whole runs.

use std::collections::BTreeMap;
use std::time::Duration;

use xrpl_ndn_sim::models::{ModelKind, PollClock};
use xrpl_ndn_sim::sim::{run, PacketKind, RunConfig, RunOutput, TopologyKind};
use xrpl_ndn_sim::SimTime;

fn run_for(kind: TopologyKind, model: ModelKind, secs: u64) -> RunOutput {
    let mut cfg = RunConfig::preset(kind, model).unwrap();
    cfg.duration = Duration::from_secs(secs);
    run(&cfg).unwrap()
}

#[test]
fn every_validation_reaches_every_validator_once() {
    for model in ModelKind::ALL {
        let kinds: &[TopologyKind] = if model == ModelKind::Baseline {
            &[TopologyKind::Baseline3]
        } else {
            &[TopologyKind::Triangle6, TopologyKind::Star7]
        };
        for &kind in kinds {
            // closes at 3, 6, ..., 300; stop after the last has settled
            let mut cfg = RunConfig::preset(kind, model).unwrap();
            cfg.duration = Duration::from_secs_f64(300.5);
            let out = run(&cfg).unwrap();
            for (obs, per) in &out.arrivals {
                for (producer, series) in per {
                    assert_eq!(series.len(), 100, "{model}/{kind}: {obs} from {producer}");
                }
            }
        }
    }
}

#[test]
fn piggyback_node_load_equals_validator_count() {
    for kind in [TopologyKind::Triangle6, TopologyKind::Star7] {
        let out = run_for(kind, ModelKind::Piggyback, 600);
        for (v, ratio) in &out.report.vals_per_validator {
            assert_eq!(*ratio, 3.0, "{kind}: {v}");
        }
        assert_eq!(out.report.cs_hits_per_min, Some(0.0));
    }
}

#[test]
fn ndn_pull_models_do_not_relay() {
    for model in [ModelKind::Polling, ModelKind::AnnouncePull, ModelKind::AdvanceRequest] {
        let out = run_for(TopologyKind::Triangle6, model, 600);
        for (v, ratio) in &out.report.vals_per_validator {
            assert_eq!(*ratio, 3.0, "{model}: {v}");
        }
    }
}

/// Arrival time of each (observer, producer, seq) in seconds.
fn arrival_table(out: &RunOutput) -> BTreeMap<(String, String, usize), f64> {
    let mut t = BTreeMap::new();
    for (obs, per) in &out.arrivals {
        for (p, series) in per {
            for (i, at) in series.iter().enumerate() {
                t.insert((obs.clone(), p.clone(), i + 1), *at);
            }
        }
    }
    t
}

#[test]
fn polling_delay_is_bounded_by_interval_and_two_round_trips() {
    for clock in [PollClock::AfterResponse, PollClock::FixedRate] {
        let mut cfg = RunConfig::preset(TopologyKind::Triangle6, ModelKind::Polling).unwrap();
        cfg.duration = Duration::from_secs(600);
        cfg.polling.clock = clock;
        let poll = run(&cfg).unwrap();
        let pig = run_for(TopologyKind::Triangle6, ModelKind::Piggyback, 600);
        let base = arrival_table(&pig);
        // producer and consumer are two 5 ms hops apart
        let rtt = 0.020;
        let bound = cfg.polling.poll_interval.as_secs_f64() + 2.0 * rtt;
        let mut checked = 0;
        for (key, at) in arrival_table(&poll) {
            let Some(reference) = base.get(&key) else { continue };
            let extra = at - reference;
            assert!(extra > 0.0 && extra <= bound + 1e-9, "{clock:?} {key:?}: {extra}");
            checked += 1;
        }
        assert!(checked > 1000);
    }
}

#[test]
fn announce_pull_producer_sees_one_interest_per_seq_on_star() {
    let out = run_for(TopologyKind::Star7, ModelKind::AnnouncePull, 300);
    let topo = &out.topology;
    let mut per_name: BTreeMap<&str, usize> = BTreeMap::new();
    for r in out.log.records() {
        if r.kind == PacketKind::Interest && topo.node(r.to).validator && r.name.contains("/val/") {
            let producer = r.name.split('/').nth(2).unwrap();
            if producer == topo.label(r.to) {
                *per_name.entry(&r.name).or_default() += 1;
            }
        }
    }
    assert!(!per_name.is_empty());
    assert!(per_name.values().all(|c| *c == 1), "{per_name:?}");
}

#[test]
fn advance_request_never_serves_before_close() {
    let mut cfg = RunConfig::preset(TopologyKind::Triangle6, ModelKind::AdvanceRequest).unwrap();
    cfg.duration = Duration::from_secs(300);
    let out = run(&cfg).unwrap();
    let interval = cfg.ledger_interval.as_secs_f64();
    let mut from_producer = 0;
    for r in out.log.records().iter().filter(|r| r.kind == PacketKind::Data) {
        let seq: u64 = r.name.rsplit('/').next().unwrap().parse().unwrap();
        let close = SimTime::from_secs_f64(seq as f64 * interval);
        assert!(r.time >= close, "{} sent at {} before close {}", r.name, r.time, close);
        // the consumer's Interest was already waiting at the producer
        let producer = r.name.split('/').nth(2).unwrap();
        if out.topology.label(r.from) == producer {
            assert_eq!(r.time, close, "{}", r.name);
            from_producer += 1;
        }
    }
    assert!(from_producer > 0);
}

#[test]
fn link_counters_match_log_per_direction() {
    let out = run_for(TopologyKind::Star7, ModelKind::Polling, 120);
    for link in out.topology.links() {
        for from in [link.a, link.b] {
            let (bytes, packets) = out
                .log
                .records()
                .iter()
                .filter(|r| r.link == link.id && r.from == from)
                .fold((0, 0), |(b, p), r| (b + r.bytes, p + 1));
            assert_eq!(link.bytes_from(from), bytes);
            assert_eq!(link.packets_from(from), packets);
        }
    }
    let times: Vec<SimTime> = out.log.records().iter().map(|r| r.time).collect();
    assert!(times.windows(2).all(|w| w[0] <= w[1]), "log is not in time order");
}

#[test]
fn jittered_runs_still_deliver_everything() {
    for model in [ModelKind::Polling, ModelKind::AdvanceRequest, ModelKind::AnnouncePull] {
        let mut cfg = RunConfig::preset(TopologyKind::Triangle6, model).unwrap();
        cfg.duration = Duration::from_secs(600);
        cfg.interval_jitter = Duration::from_millis(900);
        cfg.seed = 5;
        let out = run(&cfg).unwrap();
        // validators close different ledger counts under jitter, so count
        // deliveries against each producer's own closes
        for (obs, per) in &out.arrivals {
            for (producer, series) in per {
                let closed = out.node(producer).unwrap().validator.unwrap().ledgers_created as usize;
                let got = series.len();
                assert!(got <= closed && got + 1 >= closed, "{model}: {obs} got {got} of {closed} from {producer}");
            }
        }
        assert!(out.report.q75.unwrap() > out.report.q25.unwrap());
    }
}
