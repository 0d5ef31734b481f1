// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::XrplError;
use crate::time::SimTime;
use crate::NodeId;

/// Default on-the-wire size of one validation, in bytes.
pub const DEFAULT_PAYLOAD_SIZE: u32 = 500;

/// Bytes taken by the encoded header; the rest of the payload is padding.
pub const HEADER_LEN: usize = 4 + 8 + 32 + 8 + 4;

pub type LedgerHash = [u8; 32];

/// Digest every honest validator computes for ledger `seq`.
pub fn ledger_hash(seq: u64) -> LedgerHash {
    let mut h = Sha256::new();
    h.update(b"ledger:");
    h.update(seq.to_be_bytes());
    h.finalize().into()
}

/// A validator's statement that it computed `ledger_hash` for `ledger_seq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub validator_id: NodeId,
    pub ledger_seq: u64,
    pub ledger_hash: LedgerHash,
    pub created_at: SimTime,
    pub payload_size: u32,
}

impl Validation {
    /// Fixed-size encoding: big-endian header followed by zero padding up to
    /// `payload_size` bytes.
    pub fn encode(&self) -> Result<Vec<u8>, XrplError> {
        let size = self.payload_size as usize;
        if size < HEADER_LEN {
            return Err(XrplError::PayloadTooSmall(self.payload_size));
        }
        let mut buf = Vec::with_capacity(size);
        buf.extend_from_slice(&self.validator_id.0.to_be_bytes());
        buf.extend_from_slice(&self.ledger_seq.to_be_bytes());
        buf.extend_from_slice(&self.ledger_hash);
        buf.extend_from_slice(&self.created_at.as_micros().to_be_bytes());
        buf.extend_from_slice(&self.payload_size.to_be_bytes());
        buf.resize(size, 0);
        Ok(buf)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, XrplError> {
        if bytes.len() < HEADER_LEN {
            return Err(XrplError::Truncated(bytes.len()));
        }
        let (id, rest) = bytes.split_at(4);
        let (seq, rest) = rest.split_at(8);
        let (hash, rest) = rest.split_at(32);
        let (created, rest) = rest.split_at(8);
        let size = &rest[..4];
        let payload_size = u32::from_be_bytes(size.try_into().expect("4 bytes"));
        if payload_size as usize != bytes.len() {
            return Err(XrplError::Truncated(bytes.len()));
        }
        Ok(Validation {
            validator_id: NodeId(u32::from_be_bytes(id.try_into().expect("4 bytes"))),
            ledger_seq: u64::from_be_bytes(seq.try_into().expect("8 bytes")),
            ledger_hash: hash.try_into().expect("32 bytes"),
            created_at: SimTime::from_micros(u64::from_be_bytes(created.try_into().expect("8 bytes"))),
            payload_size,
        })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn hash_is_deterministic_per_seq() {
        assert_eq!(ledger_hash(7), ledger_hash(7));
        assert_ne!(ledger_hash(7), ledger_hash(8));
    }

    #[test]
    fn encoded_length_is_payload_size() {
        let v = Validation {
            validator_id: NodeId(1),
            ledger_seq: 1,
            ledger_hash: ledger_hash(1),
            created_at: SimTime::ZERO,
            payload_size: DEFAULT_PAYLOAD_SIZE,
        };
        assert_eq!(v.encode().unwrap().len(), 500);
    }

    #[test]
    fn too_small_payload_rejected() {
        let v = Validation {
            validator_id: NodeId(1),
            ledger_seq: 1,
            ledger_hash: ledger_hash(1),
            created_at: SimTime::ZERO,
            payload_size: 10,
        };
        assert!(v.encode().is_err());
        assert!(Validation::decode(&[0u8; 10]).is_err());
    }

    proptest! {
        #[test]
        fn encode_decode_round_trip(id in any::<u32>(), seq in any::<u64>(), t in any::<u64>(),
                                    size in (HEADER_LEN as u32)..2048) {
            let v = Validation {
                validator_id: NodeId(id),
                ledger_seq: seq,
                ledger_hash: ledger_hash(seq),
                created_at: SimTime::from_micros(t),
                payload_size: size,
            };
            prop_assert_eq!(Validation::decode(&v.encode().unwrap()).unwrap(), v);
        }
    }
}
