//! Order-preserving map over independent work items, parallel when the
//! `parallel` feature is enabled (the default) and sequential otherwise.
//!
//! Every sweep in the crate — grid points, initial conditions — funnels
//! through [`indexed_map`]. Results are merged in input order, so emitted
//! values and row order can never depend on the worker count or on
//! completion order.

use crate::error::Result;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `fallible` over `items`, returning outputs in input order.
///
/// `workers` selects the execution mode: `0` uses one thread per available
/// core, `1` runs on the calling thread, and `n > 1` runs on a dedicated
/// pool of `n` threads. Without the `parallel` feature all values run
/// sequentially. The first error aborts the sweep.
pub fn indexed_map<T, U, F>(items: Vec<T>, workers: usize, fallible: F) -> Result<Vec<U>>
where
    T: Send,
    U: Send,
    F: Fn(usize, T) -> Result<U> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        match workers {
            1 => indexed_map_seq(items, fallible),
            0 => items
                .into_par_iter()
                .enumerate()
                .map(|(index, item)| fallible(index, item))
                .collect(),
            n => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| {
                        crate::error::TopError::InvalidParameter(format!(
                            "cannot build a {n}-thread worker pool: {e}"
                        ))
                    })?;
                pool.install(|| {
                    items
                        .into_par_iter()
                        .enumerate()
                        .map(|(index, item)| fallible(index, item))
                        .collect()
                })
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        indexed_map_seq(items, fallible)
    }
}

/// Strictly sequential variant of [`indexed_map`], available in all builds;
/// the baseline the benchmark suite compares the parallel path against.
pub fn indexed_map_seq<T, U, F>(items: Vec<T>, fallible: F) -> Result<Vec<U>>
where
    F: Fn(usize, T) -> Result<U>,
{
    items
        .into_iter()
        .enumerate()
        .map(|(index, item)| fallible(index, item))
        .collect()
}
