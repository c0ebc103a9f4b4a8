//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) batch maps can run on the
//! rayon thread pool. Without it every call runs sequentially and
//! [`Execution::Parallel`] does not exist. Both paths preserve input order,
//! so results never depend on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
    }
}

/// Order-preserving fallible map; the first error in input order wins.
pub fn try_map<T, U, E, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            // collect all results so the reported error is the earliest one,
            // independent of scheduling
            let results: Vec<Result<U, E>> = items.par_iter().map(f).collect();
            results.into_iter().collect()
        }
    }
}
