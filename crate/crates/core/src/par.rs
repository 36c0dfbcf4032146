//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the work runs on the current rayon pool; the
//! caller decides the pool size. Without it the same closures run in order.
//! Reductions used by callers must be associative and insensitive to order
//! so that both paths produce identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluates `f` on `0..len` and collects the results in index order.
pub(crate) fn map_range<T, F>(len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Maps `0..len` and folds the results with `reduce`.
pub(crate) fn map_reduce<T, I, M, R>(len: usize, identity: I, map: M, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(map).reduce(identity, reduce)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(map).fold(identity(), reduce)
    }
}

/// Number of worker threads the current context offers.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
