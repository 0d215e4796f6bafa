//! Order-preserving evaluation over parameter grids.
//!
//! With the `parallel` feature the grid is cut into one contiguous chunk per
//! worker and handed to rayon; without it, or with [`Execution::Sequential`],
//! points are evaluated in a plain loop. Results always come back in input
//! order, so outputs do not depend on the worker count.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `None` uses every available core.
    Parallel { workers: Option<usize> },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: None }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `Some(1)` means sequential; `Some(n)` pins the pool size.
    pub fn with_workers(workers: Option<usize>) -> Result<Self> {
        match workers {
            Some(0) => Err(Error::InvalidInput("worker count must be at least 1".into())),
            Some(1) => Ok(Execution::Sequential),
            w => Ok(Execution::Parallel { workers: w }),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Execution::Parallel { .. })
    }
}

/// `items.iter().map(f)`, possibly in parallel, in input order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel { workers } if items.len() > 1 => parallel::map(workers, items, f),
        _ => items.iter().map(f).collect(),
    }
}

/// Like [`map`] for fallible work; reports the error of the earliest failing item.
pub fn try_map<T, R, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}

#[cfg(feature = "parallel")]
mod parallel {
    use rayon::prelude::*;

    pub(super) fn map<T, R, F>(workers: Option<usize>, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        let run = |n: usize| -> Vec<R> {
            let chunk = items.len().div_ceil(n.max(1));
            let pieces: Vec<Vec<R>> = items.par_chunks(chunk).map(|c| c.iter().map(&f).collect()).collect();
            pieces.into_iter().flatten().collect()
        };
        match workers {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(|| run(n)),
                // no threads available: fall back to the caller's thread
                Err(_) => items.iter().map(&f).collect(),
            },
            None => run(rayon::current_num_threads()),
        }
    }
}
