// SPDX-License-Identifier: Apache-2.0

//! Simplified consensus-validation node. Ledgers close on a timer, each close
//! emits one validation, and a ledger is validated once enough trusted
//! validators report the same hash. Proposals, transactions and signatures
//! are not modelled.

mod validation;
mod validator;

use thiserror::Error;

pub use validation::{ledger_hash, LedgerHash, Validation, DEFAULT_PAYLOAD_SIZE, HEADER_LEN};
pub use validator::{Received, ValidatorConfig, ValidatorCounters, ValidatorState};

use crate::time::SimTime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XrplError {
    #[error("quorum {quorum} must be in 1..={unl} (UNL size)")]
    BadQuorum { quorum: usize, unl: usize },
    #[error("ledger interval must exceed its jitter")]
    JitterTooLarge,
    #[error("payload size {0} is smaller than the {HEADER_LEN}-byte validation header")]
    PayloadTooSmall(u32),
    #[error("truncated validation ({0} bytes)")]
    Truncated(usize),
    #[error("ledger close at {now} before scheduled time {due}")]
    EarlyClose { now: SimTime, due: SimTime },
}
