use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Cooperative wall-clock budget, polled between polynomial operations.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    pub fn unlimited() -> Self {
        Deadline {
            start: Instant::now(),
            limit: None,
        }
    }

    /// Zero means unlimited.
    pub fn after_secs(secs: u64) -> Self {
        Deadline {
            start: Instant::now(),
            limit: (secs > 0).then(|| Duration::from_secs(secs)),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => Err(Error::TimeBudget(limit.as_secs())),
            _ => Ok(()),
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

impl Default for Deadline {
    fn default() -> Self {
        Self::unlimited()
    }
}
