use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

/// Event kinds in tie-break order: at equal timestamps an earlier variant
/// runs first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EventKind {
    SensorCapture,
    Inference,
    Encode,
    Transmit,
    Deliver,
    FaultOccur,
    FaultDetect,
    BatteryCheck,
    Replan,
    ArriveWaypoint,
    StartCharging,
    ChargeComplete,
    MissionEnd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time_ms: f64,
    pub kind: EventKind,
    /// Drone, message, frame or fault id depending on `kind`.
    pub subject: u64,
    /// Validity token; handlers drop events whose token is stale.
    pub epoch: u64,
    /// Time of the event that scheduled this one.
    pub scheduled_at_ms: f64,
    seq: u64,
}

impl Event {
    fn key(&self) -> (f64, EventKind, u64, u64) {
        (self.time_ms, self.kind, self.subject, self.seq)
    }
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ta, ka, sa, qa) = self.key();
        let (tb, kb, sb, qb) = other.key();
        ta.total_cmp(&tb)
            .then(ka.cmp(&kb))
            .then(sa.cmp(&sb))
            .then(qa.cmp(&qb))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Min-queue of events ordered by `(time, kind, subject, insertion order)`.
#[derive(Debug, Default)]
pub struct EventQueue {
    heap: BinaryHeap<std::cmp::Reverse<Event>>,
    next_seq: u64,
    now_ms: f64,
}

impl EventQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn now_ms(&self) -> f64 {
        self.now_ms
    }

    /// Schedule an event. Times in the past are clamped to now so that
    /// causality holds.
    pub fn schedule(&mut self, time_ms: f64, kind: EventKind, subject: u64, epoch: u64) {
        debug_assert!(time_ms.is_finite(), "non-finite event time");
        let ev = Event {
            time_ms: time_ms.max(self.now_ms),
            kind,
            subject,
            epoch,
            scheduled_at_ms: self.now_ms,
            seq: self.next_seq,
        };
        self.next_seq += 1;
        self.heap.push(std::cmp::Reverse(ev));
    }

    pub fn pop(&mut self) -> Option<Event> {
        let ev = self.heap.pop()?.0;
        self.now_ms = ev.time_ms;
        Some(ev)
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_by_time_then_kind_then_subject() {
        let mut q = EventQueue::new();
        q.schedule(5.0, EventKind::MissionEnd, 0, 0);
        q.schedule(5.0, EventKind::SensorCapture, 2, 0);
        q.schedule(5.0, EventKind::SensorCapture, 1, 0);
        q.schedule(1.0, EventKind::ChargeComplete, 9, 0);
        let order: Vec<(f64, EventKind, u64)> =
            std::iter::from_fn(|| q.pop()).map(|e| (e.time_ms, e.kind, e.subject)).collect();
        assert_eq!(
            order,
            vec![
                (1.0, EventKind::ChargeComplete, 9),
                (5.0, EventKind::SensorCapture, 1),
                (5.0, EventKind::SensorCapture, 2),
                (5.0, EventKind::MissionEnd, 0),
            ]
        );
    }

    #[test]
    fn full_ties_fall_back_to_insertion_order() {
        let mut q = EventQueue::new();
        q.schedule(1.0, EventKind::Transmit, 3, 7);
        q.schedule(1.0, EventKind::Transmit, 3, 8);
        assert_eq!(q.pop().unwrap().epoch, 7);
        assert_eq!(q.pop().unwrap().epoch, 8);
    }

    #[test]
    fn past_times_are_clamped() {
        let mut q = EventQueue::new();
        q.schedule(10.0, EventKind::Replan, 0, 0);
        q.pop();
        q.schedule(3.0, EventKind::Replan, 0, 0);
        let e = q.pop().unwrap();
        assert_eq!(e.time_ms, 10.0);
        assert_eq!(e.scheduled_at_ms, 10.0);
    }
}
