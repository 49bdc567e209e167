//! Stage-bounded jump enumeration over finite oracles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::cantor_pair;
use crate::seq::FinSeq;

/// One enumeration event: `e` entered the jump at time `time` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Event {
    pub e: u64,
    pub time: u64,
}

/// Events sorted by time, then by `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpTrace {
    pub events: Vec<Event>,
}

impl JumpTrace {
    pub fn new(mut events: Vec<Event>) -> Self {
        events.sort_by_key(|ev| (ev.time, ev.e));
        JumpTrace { events }
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.events.iter().any(|ev| ev.e == e)
    }

    pub fn members(&self) -> BTreeSet<u64> {
        self.events.iter().map(|ev| ev.e).collect()
    }

    pub fn is_prefix_of(&self, other: &JumpTrace) -> bool {
        other.events.starts_with(&self.events)
    }

    /// The last number enumerated: greatest time, ties broken by greatest `e`;
    /// 0 for an empty trace.
    pub fn last_enumerated(&self) -> u64 {
        self.events
            .iter()
            .max_by_key(|ev| (ev.time, ev.e))
            .map_or(0, |ev| ev.e)
    }

    /// Checks the per-trace invariants against an oracle of length `len`.
    pub fn check_shape(&self, len: usize) -> Result<()> {
        let mut seen = BTreeSet::new();
        for w in self.events.windows(2) {
            if (w[0].time, w[0].e) > (w[1].time, w[1].e) {
                return Err(Error::Contract("events out of order".into()));
            }
        }
        for ev in &self.events {
            if ev.time == 0 || ev.time as usize > len {
                return Err(Error::Contract(format!(
                    "event {} at time {} outside 1..={len}",
                    ev.e, ev.time
                )));
            }
            if !seen.insert(ev.e) {
                return Err(Error::Contract(format!("{} enumerated twice", ev.e)));
            }
        }
        Ok(())
    }
}

/// A monotone enumeration of the finite jump `σ′`.
pub trait EnumerationOperator {
    fn enumerate(&self, sigma: &[u64]) -> JumpTrace;

    fn name(&self) -> &str {
        "operator"
    }
}

impl<T: EnumerationOperator + ?Sized> EnumerationOperator for &T {
    fn enumerate(&self, sigma: &[u64]) -> JumpTrace {
        (**self).enumerate(sigma)
    }

    fn name(&self) -> &str {
        (**self).name()
    }
}

impl<T: EnumerationOperator + ?Sized> EnumerationOperator for Box<T> {
    fn enumerate(&self, sigma: &[u64]) -> JumpTrace {
        (**self).enumerate(sigma)
    }

    fn name(&self) -> &str {
        (**self).name()
    }
}

/// Enumerates `pair(i, k)` at the position of the `(k+1)`-th occurrence of `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DefaultOperator;

impl EnumerationOperator for DefaultOperator {
    fn enumerate(&self, sigma: &[u64]) -> JumpTrace {
        let mut counts = std::collections::HashMap::new();
        let events = sigma
            .iter()
            .enumerate()
            .map(|(pos, &i)| {
                let k = counts.entry(i).or_insert(0u64);
                let ev = Event {
                    e: cantor_pair(i, *k),
                    time: pos as u64 + 1,
                };
                *k += 1;
                ev
            })
            .collect();
        JumpTrace { events }
    }

    fn name(&self) -> &str {
        "default"
    }
}

/// Reports the default events in reverse time order. Violates prefix
/// monotonicity; exists to exercise the verifiers.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReversedOperator;

impl EnumerationOperator for ReversedOperator {
    fn enumerate(&self, sigma: &[u64]) -> JumpTrace {
        let n = sigma.len() as u64;
        let events = DefaultOperator
            .enumerate(sigma)
            .events
            .into_iter()
            .map(|ev| Event {
                e: ev.e,
                time: n + 1 - ev.time,
            })
            .collect();
        JumpTrace::new(events)
    }

    fn name(&self) -> &str {
        "reversed"
    }
}

pub fn enumerate_jump<O: EnumerationOperator + ?Sized>(op: &O, sigma: &FinSeq) -> JumpTrace {
    op.enumerate(sigma.as_slice())
}

pub fn p_value<O: EnumerationOperator + ?Sized>(op: &O, sigma: &FinSeq) -> u64 {
    op.enumerate(sigma.as_slice()).last_enumerated()
}

/// Wraps an operator and checks its contract on every call.
pub struct Validated<O> {
    inner: O,
}

impl<O: EnumerationOperator> Validated<O> {
    pub fn new(inner: O) -> Self {
        Validated { inner }
    }

    pub fn into_inner(self) -> O {
        self.inner
    }

    /// Enumerates `sigma`, checking trace shape and that the trace of every
    /// prefix is a prefix of the result.
    pub fn enumerate_checked(&self, sigma: &FinSeq) -> Result<JumpTrace> {
        let full = self.inner.enumerate(sigma.as_slice());
        full.check_shape(sigma.len())?;
        for n in 0..sigma.len() {
            let part = self.inner.enumerate(&sigma.as_slice()[..n]);
            part.check_shape(n)?;
            if !part.is_prefix_of(&full) {
                return Err(Error::Contract(format!(
                    "trace of {} is not a prefix of the trace of {sigma}",
                    sigma.truncate(n)
                )));
            }
        }
        Ok(full)
    }
}
