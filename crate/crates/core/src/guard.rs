//! Global face-count guard.
//!
//! Every enumeration that materializes faces or cells checks its running
//! count against this limit and aborts with [`Error::FaceGuardExceeded`]
//! once it would pass it. The default of five million keeps desk-scale
//! constructions comfortable while failing loudly on runaway joins.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_FACE_GUARD: usize = 5_000_000;

static FACE_GUARD: AtomicUsize = AtomicUsize::new(DEFAULT_FACE_GUARD);

/// Current guard limit (number of faces/cells a single construction may hold).
pub fn face_guard() -> usize {
    FACE_GUARD.load(Ordering::Relaxed)
}

/// Override the guard limit process-wide. Returns the previous limit.
pub fn set_face_guard(limit: usize) -> usize {
    FACE_GUARD.swap(limit, Ordering::Relaxed)
}

/// Incremental counter used by enumerations to stay under the guard.
#[derive(Debug)]
pub struct GuardCounter {
    limit: usize,
    count: usize,
}

impl GuardCounter {
    pub fn new() -> Self {
        GuardCounter { limit: face_guard(), count: 0 }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.count += 1;
        if self.count > self.limit {
            Err(Error::FaceGuardExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Pre-check for constructions whose size is known in closed form.
    pub fn check_total(&self, total: usize) -> Result<()> {
        if total > self.limit {
            Err(Error::FaceGuardExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

impl Default for GuardCounter {
    fn default() -> Self {
        Self::new()
    }
}
