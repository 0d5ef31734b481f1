// SPDX-License-Identifier: Apache-2.0

//! The five dissemination strategies, expressed as handlers on a
//! [`ValidatorApp`] that sits on top of a node's forwarder (NDN models) or
//! its peer links (baseline flooding).

mod advance;
mod announce;
mod app;
mod baseline;
mod piggyback;
mod polling;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ndn::{Name, NdnError};
use crate::xrpl::XrplError;

pub use app::{AppAction, AppConfig, AppTimer, ValidatorApp};

pub const DEFAULT_POLL_INTERVAL: Duration = Duration::from_millis(200);
pub const DEFAULT_VALIDATION_FRESHNESS: Duration = Duration::from_secs(10);

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("name kind {0:?} needs a sequence number")]
    MissingSeq(NameKind),
    #[error("name kind {0:?} needs a producer")]
    MissingProducer(NameKind),
    #[error("node label {0:?} collides with a reserved name component")]
    ReservedLabel(String),
    #[error("poll interval must be positive")]
    ZeroPollInterval,
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("malformed content under {0}")]
    BadContent(Name),
    #[error(transparent)]
    Ndn(#[from] NdnError),
    #[error(transparent)]
    Xrpl(#[from] XrplError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Direct peer links with flooding and duplicate suppression.
    Baseline,
    /// Consumers poll each producer's latest sequence and fetch new ones.
    Polling,
    /// Producers multicast a sequence announcement; consumers pull.
    AnnouncePull,
    /// Consumers keep an Interest for the next sequence pending.
    AdvanceRequest,
    /// The validation rides in a multicast Interest's parameters.
    Piggyback,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Baseline,
        ModelKind::Polling,
        ModelKind::AnnouncePull,
        ModelKind::AdvanceRequest,
        ModelKind::Piggyback,
    ];

    pub fn uses_ndn(self) -> bool {
        self != ModelKind::Baseline
    }

    fn as_str(self) -> &'static str {
        match self {
            ModelKind::Baseline => "baseline",
            ModelKind::Polling => "polling",
            ModelKind::AnnouncePull => "announce_pull",
            ModelKind::AdvanceRequest => "advance_request",
            ModelKind::Piggyback => "piggyback",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| ModelError::UnknownModel(s.to_string()))
    }
}

/// When the next poll of a producer is issued.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PollClock {
    /// Every `poll_interval`, regardless of responses.
    FixedRate,
    /// `poll_interval` after the previous poll was answered or timed out.
    #[default]
    AfterResponse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PollingConfig {
    pub poll_interval: Duration,
    pub clock: PollClock,
}

impl Default for PollingConfig {
    fn default() -> Self {
        Self {
            poll_interval: DEFAULT_POLL_INTERVAL,
            clock: PollClock::default(),
        }
    }
}

impl PollingConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.poll_interval.is_zero() {
            return Err(ModelError::ZeroPollInterval);
        }
        Ok(())
    }
}

/// A consumer's view of one remote producer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SequenceRecord {
    /// Highest sequence received; never decreases.
    pub last_seen_seq: u64,
    /// Highest sequence currently being fetched, if any.
    pub outstanding_request: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NameKind {
    LatestSeq,
    Validation,
    Announce,
    Piggyback,
}

pub const ROOT: &str = "xrpl";
const LATEST: &str = "latest";
const VAL: &str = "val";
const ANNOUNCE: &str = "announce";
const PIGGYBACK: &str = "piggyback";

/// Labels that would make the name scheme ambiguous.
pub fn check_label(label: &str) -> Result<(), ModelError> {
    if label == ANNOUNCE || label == PIGGYBACK {
        return Err(ModelError::ReservedLabel(label.to_string()));
    }
    Ok(())
}

/// Builds the name of `kind` for `producer`:
/// `/xrpl/<p>/latest`, `/xrpl/<p>/val/<seq>`, `/xrpl/announce/<p>/<seq>`
/// or the shared `/xrpl/piggyback`.
pub fn namespace(producer: Option<&str>, kind: NameKind, seq: Option<u64>) -> Result<Name, ModelError> {
    let need_producer = || producer.ok_or(ModelError::MissingProducer(kind));
    let need_seq = || seq.ok_or(ModelError::MissingSeq(kind));
    let parts: Vec<String> = match kind {
        NameKind::LatestSeq => vec![ROOT.into(), need_producer()?.into(), LATEST.into()],
        NameKind::Validation => vec![
            ROOT.into(),
            need_producer()?.into(),
            VAL.into(),
            need_seq()?.to_string(),
        ],
        NameKind::Announce => vec![
            ROOT.into(),
            ANNOUNCE.into(),
            need_producer()?.into(),
            need_seq()?.to_string(),
        ],
        NameKind::Piggyback => vec![ROOT.into(), PIGGYBACK.into()],
    };
    if let Some(p) = producer {
        if kind != NameKind::Piggyback {
            check_label(p)?;
        }
    }
    Ok(Name::new(parts)?)
}

/// Prefix answered by a validator's own application.
pub fn producer_prefix(label: &str) -> Result<Name, ModelError> {
    check_label(label)?;
    Ok(Name::new([ROOT, label])?)
}

pub fn announce_prefix() -> Name {
    Name::new([ROOT, ANNOUNCE]).expect("static name")
}

pub fn piggyback_prefix() -> Name {
    Name::new([ROOT, PIGGYBACK]).expect("static name")
}

/// Inverse of [`namespace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedName<'a> {
    Latest { producer: &'a str },
    Validation { producer: &'a str, seq: u64 },
    Announce { producer: &'a str, seq: u64 },
    Piggyback,
}

pub fn parse_name(name: &Name) -> Option<ParsedName<'_>> {
    let c: Vec<&str> = name.components().iter().map(String::as_str).collect();
    match c.as_slice() {
        [ROOT, PIGGYBACK] => Some(ParsedName::Piggyback),
        [ROOT, ANNOUNCE, p, s] => Some(ParsedName::Announce {
            producer: p,
            seq: s.parse().ok()?,
        }),
        [ROOT, p, LATEST] => Some(ParsedName::Latest { producer: p }),
        [ROOT, p, VAL, s] => Some(ParsedName::Validation {
            producer: p,
            seq: s.parse().ok()?,
        }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_scheme() {
        let v = namespace(Some("A"), NameKind::Validation, Some(7)).unwrap();
        assert_eq!(v.to_string(), "/xrpl/A/val/7");
        let l = namespace(Some("A"), NameKind::LatestSeq, None).unwrap();
        assert_eq!(l.to_string(), "/xrpl/A/latest");
        let a = namespace(Some("B"), NameKind::Announce, Some(3)).unwrap();
        assert_eq!(a.to_string(), "/xrpl/announce/B/3");
        for p in [None, Some("A"), Some("C")] {
            assert_eq!(namespace(p, NameKind::Piggyback, None).unwrap().to_string(), "/xrpl/piggyback");
        }
    }

    #[test]
    fn missing_parts_are_errors() {
        assert!(matches!(
            namespace(Some("A"), NameKind::Validation, None),
            Err(ModelError::MissingSeq(_))
        ));
        assert!(matches!(
            namespace(None, NameKind::LatestSeq, None),
            Err(ModelError::MissingProducer(_))
        ));
        assert!(matches!(
            namespace(Some("announce"), NameKind::LatestSeq, None),
            Err(ModelError::ReservedLabel(_))
        ));
    }

    #[test]
    fn parse_inverts_namespace() {
        for (p, kind, seq) in [
            (Some("A"), NameKind::Validation, Some(12)),
            (Some("hub"), NameKind::LatestSeq, None),
            (Some("C"), NameKind::Announce, Some(1)),
            (None, NameKind::Piggyback, None),
        ] {
            let name = namespace(p, kind, seq).unwrap();
            let parsed = parse_name(&name).unwrap();
            let expected = match kind {
                NameKind::Validation => ParsedName::Validation {
                    producer: p.unwrap(),
                    seq: seq.unwrap(),
                },
                NameKind::LatestSeq => ParsedName::Latest { producer: p.unwrap() },
                NameKind::Announce => ParsedName::Announce {
                    producer: p.unwrap(),
                    seq: seq.unwrap(),
                },
                NameKind::Piggyback => ParsedName::Piggyback,
            };
            assert_eq!(parsed, expected);
        }
        assert_eq!(parse_name(&"/xrpl/A/val/x".parse().unwrap()), None);
    }

    #[test]
    fn model_names_round_trip() {
        for m in ModelKind::ALL {
            assert_eq!(m.to_string().parse::<ModelKind>().unwrap(), m);
        }
        assert!("flooding".parse::<ModelKind>().is_err());
    }
}
