//! Execution strategy for the data-parallel loops (corpus suites, falsifier
//! trials, per-start orbit simulation, Maia table rows).
//!
//! With the `parallel` feature disabled, [`Exec::Parallel`] silently runs
//! sequentially. Every helper returns results in index order, so reports do
//! not depend on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
    /// Maps `f` over `0..n`, preserving order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Lowest index `i` in `0..n` for which `f(i)` is `Some`, with its value.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<(usize, T)>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n)
                .into_par_iter()
                .find_map_first(|i| f(i).map(|v| (i, v))),
            _ => (0..n).find_map(|i| f(i).map(|v| (i, v))),
        }
    }
}
