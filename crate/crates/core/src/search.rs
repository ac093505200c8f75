//! Shared knobs for the exhaustive searches.

use rayon::prelude::*;

/// Default cap on search effort (candidate maps or explored nodes).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Budget and worker-splitting options passed to every exhaustive search.
///
/// In parallel mode the root branching factor is split across rayon workers,
/// each with its own copy of the budget, and the least witness wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub budget: u64,
    pub parallel: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            budget: DEFAULT_BUDGET,
            parallel: false,
        }
    }
}

impl SearchLimits {
    pub fn with_budget(budget: u64) -> Self {
        SearchLimits {
            budget,
            ..Default::default()
        }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

/// Runs `branch` for each root value `0..roots` and returns the first
/// non-empty answer in root order. Errors are reported only if no earlier
/// root produced an answer, so the sequential and parallel paths agree.
pub(crate) fn first_by_root<T, E, F>(roots: usize, parallel: bool, branch: F) -> Result<Option<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<Option<T>, E> + Sync,
{
    if parallel {
        let results: Vec<Result<Option<T>, E>> = (0..roots).into_par_iter().map(&branch).collect();
        for r in results {
            match r {
                Ok(None) => continue,
                other => return other,
            }
        }
        Ok(None)
    } else {
        for root in 0..roots {
            match branch(root) {
                Ok(None) => continue,
                other => return other,
            }
        }
        Ok(None)
    }
}

/// Counts explored nodes against a budget.
#[derive(Debug)]
pub(crate) struct NodeCounter {
    used: u64,
    budget: u64,
}

impl NodeCounter {
    pub(crate) fn new(budget: u64) -> Self {
        NodeCounter { used: 0, budget }
    }

    /// Returns false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.budget
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}
