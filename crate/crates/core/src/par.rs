//! Execution strategy for the state-space sweeps.
//!
//! Every helper here returns exactly what the sequential loop would return, in
//! the same order; parallel execution only changes how the index range is
//! split. Without the `parallel` feature, [`Exec::Parallel`] runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum number of indices handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 256;

/// How a sweep over a range of indices is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Exec {
    /// True when this strategy actually runs on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
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

/// `(0..len).map(f).collect()`.
pub(crate) fn map_range<T, F>(exec: Exec, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len)
            .into_par_iter()
            .with_min_len(MIN_CHUNK)
            .map(f)
            .collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Smallest index in `0..len` satisfying `pred`.
pub(crate) fn find_first<F>(exec: Exec, len: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len)
            .into_par_iter()
            .with_min_len(MIN_CHUNK)
            .find_first(|&i| pred(i));
    }
    let _ = exec;
    (0..len).find(|&i| pred(i))
}

/// Maximum of `f` over `0..len`, `None` for an empty range.
pub(crate) fn max_range<F>(exec: Exec, len: usize, f: F) -> Option<u32>
where
    F: Fn(usize) -> u32 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len)
            .into_par_iter()
            .with_min_len(MIN_CHUNK)
            .map(f)
            .max();
    }
    let _ = exec;
    (0..len).map(f).max()
}

/// Concatenation of `f(chunk)` over consecutive chunks of `0..len`.
///
/// Used where each index produces a variable number of items, so a plain
/// `map_range` would allocate one vector per index.
pub(crate) fn flat_map_chunks<T, F>(exec: Exec, len: usize, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> Vec<T> + Sync + Send,
{
    let chunk = chunk.max(1);
    let chunks = len.div_ceil(chunk);
    let range = |c: usize| c * chunk..((c + 1) * chunk).min(len);
    let parts: Vec<Vec<T>> = if exec.is_parallel() {
        map_range(exec, chunks, |c| f(range(c)))
    } else {
        (0..chunks).map(|c| f(range(c))).collect()
    };
    let mut out = Vec::with_capacity(parts.iter().map(Vec::len).sum());
    for p in parts {
        out.extend(p);
    }
    out
}
