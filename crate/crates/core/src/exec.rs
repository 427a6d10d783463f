//! Execution strategy for the data-parallel loops.
//!
//! Every helper here returns results in input order, so switching between
//! [`Exec::Sequential`] and [`Exec::Parallel`] never changes observable output.
//! Without the `parallel` feature, `Parallel` runs sequentially.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn map_range<R, F>(self, range: Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Index of the first item satisfying `pred`.
    pub fn position_first<T, F>(self, items: &[T], pred: F) -> Option<usize>
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().position_first(pred);
        }
        items.iter().position(pred)
    }

    pub fn all<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().all(pred);
        }
        items.iter().all(pred)
    }
}

/// Work limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of vectors an enumeration may visit.
    pub enumeration: u128,
    /// Maximum ambient space size q^m for the optimal-codelength search.
    pub oracle_space: u128,
    /// Node budget for backtracking searches.
    pub search_nodes: u64,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 100_000_000,
            oracle_space: 1 << 20,
            search_nodes: 20_000_000,
            exec: Exec::default(),
        }
    }
}

impl Limits {
    pub fn with_exec(self, exec: Exec) -> Self {
        Limits { exec, ..self }
    }

    pub(crate) fn check_enumeration(&self, needed: u128) -> crate::Result<()> {
        if needed > self.enumeration {
            return Err(crate::Error::BudgetExceeded { needed, budget: self.enumeration });
        }
        Ok(())
    }
}
