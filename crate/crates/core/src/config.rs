//! Resource limits and worker configuration shared by the scans.
//!
//! Every enumeration in this crate partitions its candidate range across a
//! rayon pool and merges results in canonical order, so the output never
//! depends on `jobs`.

use crate::error::{Error, Result};

/// Hard cap on the number of entries of any single operation table.
pub const MAX_TABLE_ENTRIES: usize = 1 << 27;

/// Default cap on the carrier size of a lifted groupoid.
pub const DEFAULT_LIFTED_CARRIER: usize = 4096;

/// Default cap on the number of candidates a full scan may visit.
pub const DEFAULT_ENUMERATION_GUARD: u128 = 1_000_000;

/// Default cap on the number of variable assignments an identity check may visit.
pub const DEFAULT_ASSIGNMENT_GUARD: u128 = 10_000_000;

/// Largest order accepted by the isomorphism search.
pub const DEFAULT_ISOMORPHISM_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub table_entries: usize,
    pub lifted_carrier: usize,
    pub enumeration: u128,
    pub assignments: u128,
    pub isomorphism_order: usize,
    /// Skip the enumeration guard and feasibility table; the caller accepts long runs.
    pub allow_long_runs: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table_entries: MAX_TABLE_ENTRIES,
            lifted_carrier: DEFAULT_LIFTED_CARRIER,
            enumeration: DEFAULT_ENUMERATION_GUARD,
            assignments: DEFAULT_ASSIGNMENT_GUARD,
            isomorphism_order: DEFAULT_ISOMORPHISM_ORDER,
            allow_long_runs: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker count; 0 lets rayon pick.
    pub jobs: usize,
    pub limits: Limits,
}

impl SearchConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        SearchConfig {
            jobs,
            ..Default::default()
        }
    }

    pub(crate) fn install<R, F>(&self, f: F) -> Result<R>
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::PreconditionFailed(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }

    pub(crate) fn check_enumeration(&self, what: &str, candidates: Option<u128>) -> Result<()> {
        if self.limits.allow_long_runs {
            return Ok(());
        }
        match candidates {
            Some(c) if c <= self.limits.enumeration => Ok(()),
            Some(c) => Err(Error::capacity(format!(
                "{what}: {c} candidates exceed the enumeration guard of {}",
                self.limits.enumeration
            ))),
            None => Err(Error::capacity(format!(
                "{what}: candidate count does not fit in 128 bits"
            ))),
        }
    }
}
