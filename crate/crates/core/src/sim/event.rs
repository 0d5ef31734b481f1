// SPDX-License-Identifier: Apache-2.0

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::SimError;
use crate::time::SimTime;

/// A scheduled event. Events run in `(fire_at, seq_no)` order, where
/// `seq_no` is assigned when the event is scheduled.
#[derive(Clone, Debug)]
pub struct Event<E> {
    pub fire_at: SimTime,
    pub seq_no: u64,
    pub kind: E,
}

impl<E> PartialEq for Event<E> {
    fn eq(&self, other: &Self) -> bool {
        (self.fire_at, self.seq_no) == (other.fire_at, other.seq_no)
    }
}

impl<E> Eq for Event<E> {}

impl<E> PartialOrd for Event<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E> Ord for Event<E> {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        (other.fire_at, other.seq_no).cmp(&(self.fire_at, self.seq_no))
    }
}

#[derive(Debug)]
pub struct Scheduler<E> {
    now: SimTime,
    next_seq: u64,
    queue: BinaryHeap<Event<E>>,
}

impl<E> Default for Scheduler<E> {
    fn default() -> Self {
        Self {
            now: SimTime::ZERO,
            next_seq: 0,
            queue: BinaryHeap::new(),
        }
    }
}

impl<E> Scheduler<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn now(&self) -> SimTime {
        self.now
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn schedule(&mut self, fire_at: SimTime, kind: E) -> Result<u64, SimError> {
        if fire_at < self.now {
            return Err(SimError::ScheduleInPast {
                now: self.now,
                at: fire_at,
            });
        }
        let seq_no = self.next_seq;
        self.next_seq += 1;
        self.queue.push(Event { fire_at, seq_no, kind });
        Ok(seq_no)
    }

    pub fn peek_time(&self) -> Option<SimTime> {
        self.queue.peek().map(|e| e.fire_at)
    }

    /// Removes the next event and advances the clock to its time.
    pub fn pop(&mut self) -> Option<Event<E>> {
        let ev = self.queue.pop()?;
        self.now = ev.fire_at;
        Some(ev)
    }
}
