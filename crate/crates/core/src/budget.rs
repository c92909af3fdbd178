use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// Resource limits for exhaustive searches.
///
/// Both limits are optional; an unlimited budget never interrupts a search.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + timeout),
            max_nodes: None,
        }
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Node counter shared between the workers of a single search.
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    nodes: AtomicU64,
    tripped: std::sync::atomic::AtomicBool,
}

const CHECK_EVERY: u64 = 1 << 12;

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Self {
            budget,
            nodes: AtomicU64::new(0),
            tripped: Default::default(),
        }
    }

    /// Charges `n` nodes; returns false once the budget is spent.
    pub(crate) fn charge(&self, n: u64) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let before = self.nodes.fetch_add(n, Ordering::Relaxed);
        let after = before + n;
        if let Some(cap) = self.budget.max_nodes {
            if after > cap {
                self.tripped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if before / CHECK_EVERY != after / CHECK_EVERY && self.budget.expired() {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }
}
