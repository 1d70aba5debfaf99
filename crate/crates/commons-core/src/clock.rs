//! Injected time source.
//!
//! No component reads the wall clock directly; everything takes a `Clock`
//! so SLA deadlines and incident timestamps are testable in milliseconds.

use std::cell::Cell;
use std::time::{SystemTime, UNIX_EPOCH};

/// Seconds since the Unix epoch.
pub trait Clock {
    fn now(&self) -> i64;
}

/// Wall-clock time.
pub struct SystemClock;

impl Clock for SystemClock {
    fn now(&self) -> i64 {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs() as i64)
            .unwrap_or(0)
    }
}

/// Simulated clock; time only moves when `set` or `advance` is called.
pub struct SimClock {
    t: Cell<i64>,
}

impl SimClock {
    pub fn new(start: i64) -> Self {
        Self { t: Cell::new(start) }
    }

    pub fn set(&self, t: i64) {
        self.t.set(t);
    }

    pub fn advance(&self, secs: i64) {
        self.t.set(self.t.get() + secs);
    }
}

impl Clock for SimClock {
    fn now(&self) -> i64 {
        self.t.get()
    }
}
