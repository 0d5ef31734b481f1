// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;

use super::CliError;
use crate::metrics::{EncodingModel, DEFAULT_WINDOW};
use crate::models::{ModelKind, PollClock, PollingConfig};
use crate::sim::{build_topology, NodeSpec, RunConfig, Topology, TopologyKind, DEFAULT_LINK_LATENCY};

/// A run configuration file (TOML). Every section is optional except
/// `[run]`; unknown keys are rejected.
///
/// ```toml
/// [run]
/// topology = "triangle6"      # baseline3 | star7 | triangle6 | custom
/// model = "piggyback"         # baseline | polling | announce_pull | advance_request | piggyback
/// duration_s = 3600
/// seed = 1
/// link_latency_ms = 5
///
/// [validator]
/// ledger_interval_s = 3.0
/// ```
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub run: RunSection,
    #[serde(default)]
    pub topology: TopologySection,
    #[serde(default)]
    pub validator: ValidatorSection,
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub metrics: MetricsSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub topology: String,
    pub model: String,
    pub duration_s: f64,
    #[serde(default)]
    pub seed: u64,
    pub link_latency_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologySection {
    /// Per-link latency overrides.
    #[serde(default)]
    pub latency: Vec<LinkOverride>,
    /// Nodes of a custom topology.
    #[serde(default)]
    pub nodes: Vec<NodeSpec>,
    /// Links of a custom topology; `ms` falls back to `run.link_latency_ms`.
    #[serde(default)]
    pub links: Vec<LinkSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkOverride {
    pub a: String,
    pub b: String,
    pub ms: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    pub a: String,
    pub b: String,
    pub ms: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidatorSection {
    pub ledger_interval_s: Option<f64>,
    pub interval_jitter_s: Option<f64>,
    pub payload_size: Option<u32>,
    pub quorum: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub poll_interval_ms: Option<f64>,
    pub poll_clock: Option<PollClock>,
    pub interest_lifetime_ms: Option<f64>,
    pub validation_freshness_s: Option<f64>,
    pub cs_capacity: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsSection {
    pub window: Option<usize>,
    pub hist_bin_s: Option<f64>,
    pub observer: Option<String>,
    pub encoding: Option<EncodingModel>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

fn invalid(field: &str, msg: impl Into<String>) -> CliError {
    CliError::Config {
        field: field.to_string(),
        msg: msg.into(),
    }
}

/// Seconds to a duration; zero is allowed only when `allow_zero`.
fn secs(field: &str, v: f64, allow_zero: bool) -> Result<Duration, CliError> {
    if !v.is_finite() || v < 0.0 || (!allow_zero && v == 0.0) {
        let want = if allow_zero { "non-negative" } else { "positive" };
        return Err(invalid(field, format!("must be a {want} number of seconds, got {v}")));
    }
    Ok(Duration::from_micros((v * 1e6).round() as u64))
}

fn millis(field: &str, v: f64) -> Result<Duration, CliError> {
    secs(field, v / 1000.0, false)
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::ConfigSyntax(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn window(&self) -> usize {
        self.metrics.window.unwrap_or(DEFAULT_WINDOW)
    }

    fn build_topology(&self) -> Result<Topology, CliError> {
        let kind: TopologyKind = self
            .run
            .topology
            .parse()
            .map_err(|_| invalid("run.topology", format!("unknown topology {:?}", self.run.topology)))?;
        let latency = match self.run.link_latency_ms {
            Some(ms) => secs("run.link_latency_ms", ms / 1000.0, true)?,
            None => DEFAULT_LINK_LATENCY,
        };
        let t = &self.topology;
        let mut topo = if kind == TopologyKind::Custom {
            if t.nodes.is_empty() {
                return Err(invalid("topology.nodes", "a custom topology needs nodes"));
            }
            let mut edges = Vec::with_capacity(t.links.len());
            for l in &t.links {
                let d = match l.ms {
                    Some(ms) => secs("topology.links.ms", ms / 1000.0, true)?,
                    None => latency,
                };
                edges.push((l.a.clone(), l.b.clone(), d));
            }
            Topology::custom(t.nodes.clone(), &edges).map_err(|e| invalid("topology", e.to_string()))?
        } else {
            if !t.nodes.is_empty() || !t.links.is_empty() {
                return Err(invalid("topology.nodes", "only custom topologies take nodes and links"));
            }
            build_topology(kind, latency).map_err(|e| invalid("run.topology", e.to_string()))?
        };
        for o in &t.latency {
            let d = secs("topology.latency.ms", o.ms / 1000.0, true)?;
            topo.set_latency(&o.a, &o.b, d)
                .map_err(|e| invalid("topology.latency", e.to_string()))?;
        }
        Ok(topo)
    }

    /// Resolves defaults and checks every field.
    pub fn to_run_config(&self) -> Result<RunConfig, CliError> {
        let model: ModelKind = self
            .run
            .model
            .parse()
            .map_err(|_| invalid("run.model", format!("unknown model {:?}", self.run.model)))?;
        let mut cfg = RunConfig::new(self.build_topology()?, model);
        cfg.duration = secs("run.duration_s", self.run.duration_s, false)?;
        cfg.seed = self.run.seed;

        let v = &self.validator;
        if let Some(x) = v.ledger_interval_s {
            cfg.ledger_interval = secs("validator.ledger_interval_s", x, false)?;
        }
        if let Some(x) = v.interval_jitter_s {
            cfg.interval_jitter = secs("validator.interval_jitter_s", x, true)?;
        }
        if cfg.interval_jitter >= cfg.ledger_interval {
            return Err(invalid("validator.interval_jitter_s", "must be below the ledger interval"));
        }
        if let Some(x) = v.payload_size {
            if (x as usize) < crate::xrpl::HEADER_LEN {
                return Err(invalid(
                    "validator.payload_size",
                    format!("must be at least {} bytes", crate::xrpl::HEADER_LEN),
                ));
            }
            cfg.payload_size = x;
        }
        if let Some(q) = v.quorum {
            let n = cfg.topology.validators().len();
            if q == 0 || q > n {
                return Err(invalid("validator.quorum", format!("must be in 1..={n}")));
            }
            cfg.quorum = Some(q);
        }

        let m = &self.model;
        let mut polling = PollingConfig::default();
        if let Some(x) = m.poll_interval_ms {
            polling.poll_interval = millis("model.poll_interval_ms", x)?;
        }
        if let Some(c) = m.poll_clock {
            polling.clock = c;
        }
        cfg.polling = polling;
        if let Some(x) = m.interest_lifetime_ms {
            cfg.interest_lifetime = millis("model.interest_lifetime_ms", x)?;
        }
        if let Some(x) = m.validation_freshness_s {
            cfg.validation_freshness = secs("model.validation_freshness_s", x, true)?;
        }
        if let Some(x) = m.cs_capacity {
            cfg.cs_capacity = x;
        }

        let mt = &self.metrics;
        if self.window() < 2 {
            return Err(invalid("metrics.window", "must be at least 2"));
        }
        if let Some(x) = mt.hist_bin_s {
            if !(x > 0.0 && x.is_finite()) {
                return Err(invalid("metrics.hist_bin_s", "must be positive"));
            }
            cfg.hist_bin_s = x;
        }
        if let Some(e) = &mt.encoding {
            cfg.encoding = e.clone();
        }
        cfg.observer = mt.observer.clone();
        cfg.validate().map_err(|e| invalid("run", e.to_string()))?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        [run]
        topology = "triangle6"
        model = "piggyback"
        duration_s = 60
    "#;

    fn field_of(err: CliError) -> String {
        match err {
            CliError::Config { field, .. } => field,
            other => panic!("expected a field error, got {other}"),
        }
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = ConfigFile::parse(MINIMAL).unwrap().to_run_config().unwrap();
        assert_eq!(cfg.model, ModelKind::Piggyback);
        assert_eq!(cfg.topology.kind(), TopologyKind::Triangle6);
        assert_eq!(cfg.duration, Duration::from_secs(60));
        assert_eq!(cfg.ledger_interval, Duration::from_secs(3));
        assert_eq!(cfg.polling.poll_interval, Duration::from_millis(200));
    }

    #[test]
    fn unknown_model_names_the_field() {
        let text = MINIMAL.replace("piggyback", "gossip");
        let err = ConfigFile::parse(&text).unwrap().to_run_config().unwrap_err();
        assert_eq!(field_of(err), "run.model");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = format!("{MINIMAL}\n[model]\npoll_intervall_ms = 5\n");
        let err = ConfigFile::parse(&text).unwrap_err();
        assert!(err.to_string().contains("poll_intervall_ms"), "{err}");
    }

    #[test]
    fn non_positive_values_are_rejected() {
        let text = MINIMAL.replace("duration_s = 60", "duration_s = 0");
        let err = ConfigFile::parse(&text).unwrap().to_run_config().unwrap_err();
        assert_eq!(field_of(err), "run.duration_s");
        let text = format!("{MINIMAL}\n[model]\npoll_interval_ms = -1\n");
        let err = ConfigFile::parse(&text).unwrap().to_run_config().unwrap_err();
        assert_eq!(field_of(err), "model.poll_interval_ms");
    }

    #[test]
    fn latency_overrides_apply() {
        let text = MINIMAL.replace("triangle6", "star7").replace("piggyback", "announce_pull")
            + "\n[topology]\nlatency = [{ a = \"hub\", b = \"C\", ms = 50 }]\n";
        let cfg = ConfigFile::parse(&text).unwrap().to_run_config().unwrap();
        let t = &cfg.topology;
        let link = t.link_between(t.node_by_label("hub").unwrap(), t.node_by_label("C").unwrap()).unwrap();
        assert_eq!(t.link(link).latency, Duration::from_millis(50));
    }

    #[test]
    fn custom_topology() {
        let text = r#"
            [run]
            topology = "custom"
            model = "piggyback"
            duration_s = 10
            [topology]
            nodes = [
                { label = "P", ndn = true, validator = true },
                { label = "R", ndn = true, validator = false },
                { label = "Q", ndn = true, validator = true },
            ]
            links = [{ a = "P", b = "R" }, { a = "R", b = "Q", ms = 2 }]
        "#;
        let cfg = ConfigFile::parse(text).unwrap().to_run_config().unwrap();
        assert_eq!(cfg.topology.links().len(), 2);
        assert_eq!(cfg.topology.validators().len(), 2);
    }
}
