use crate::error::{Error, Result};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

/// Cooperative cancellation token. Long searches poll this between steps.
#[derive(Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Step counter for bounded searches. `tick` returns `CapExceeded` once the
/// limit is spent, so exhaustiveness claims are never silently cut short.
#[derive(Clone)]
pub struct Budget {
    limit: u64,
    spent: u64,
    cancel: Option<CancelToken>,
}

pub const DEFAULT_BUDGET: u64 = 50_000_000;

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0, cancel: None }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn with_cancel(mut self, token: CancelToken) -> Self {
        self.cancel = Some(token);
        self
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub fn tick(&mut self, steps: u64) -> Result<()> {
        self.spent = self.spent.saturating_add(steps);
        if self.spent > self.limit {
            return Err(Error::CapExceeded { limit: self.limit, spent: self.spent });
        }
        if let Some(tok) = &self.cancel {
            // Poll only every so often; atomic loads are cheap but not free.
            if self.spent % 1024 < steps && tok.is_cancelled() {
                return Err(Error::CapExceeded { limit: self.limit, spent: self.spent });
            }
        }
        Ok(())
    }
}
