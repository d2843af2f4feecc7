//! Thin seams between the rayon-backed and sequential code paths.
//!
//! Callers keep a `_seq` variant compiled unconditionally so the criterion
//! benches can compare both; the public entry points dispatch on the
//! `parallel` feature.

#[cfg(feature = "parallel")]
pub(crate) use rayon::prelude::*;

/// Map `f` over `items` and sum the results, in parallel when available.
#[cfg(feature = "parallel")]
pub(crate) fn map_sum<T, F>(items: Vec<T>, f: F) -> u64
where
    T: Send,
    F: Fn(T) -> u64 + Sync + Send,
{
    items.into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_sum<T, F>(items: Vec<T>, f: F) -> u64
where
    F: Fn(T) -> u64,
{
    map_sum_seq(items, f)
}

pub(crate) fn map_sum_seq<T, F>(items: Vec<T>, f: F) -> u64
where
    F: Fn(T) -> u64,
{
    items.into_iter().map(f).sum()
}

/// Map `f` over `items`, collecting results in input order.
#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    map_collect_seq(items, f)
}

#[allow(dead_code)] // the dispatching entry point only calls this without `parallel`
pub(crate) fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
