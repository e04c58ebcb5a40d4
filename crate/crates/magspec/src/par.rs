//! Thin dispatch layer between rayon and sequential execution.
//!
//! Every helper here is written so that the result is bitwise identical
//! whichever path runs: maps preserve item order, and reductions merge
//! fixed-size chunks in ascending chunk order. Thread count therefore never
//! affects output, only wall time.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub(crate) fn map_slice<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Order-preserving map over a slice.
#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Split `0..n` into ranges of length `chunk` (last one shorter) and map
/// each range to a value, returned in ascending range order.
pub(crate) fn map_ranges<U: Send, F>(n: usize, chunk: usize, f: F) -> Vec<U>
where
    F: Fn(Range<usize>) -> U + Sync + Send,
{
    let chunk = chunk.max(1);
    let ranges: Vec<Range<usize>> = (0..n)
        .step_by(chunk)
        .map(|s| s..(s + chunk).min(n))
        .collect();
    map_slice(&ranges, |r| f(r.clone()))
}

/// Apply `f` to disjoint consecutive chunks of `data`, passing the index of
/// the first element of each chunk. Chunks are disjoint, so this is safe to
/// run in any order.
#[cfg(feature = "parallel")]
pub(crate) fn chunks_mut<T: Send, F>(data: &mut [T], chunk: usize, f: F)
where
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let chunk = chunk.max(1);
    data.par_chunks_mut(chunk)
        .enumerate()
        .for_each(|(c, slice)| f(c * chunk, slice));
}

/// Apply `f` to disjoint consecutive chunks of `data`, passing the index of
/// the first element of each chunk.
#[cfg(not(feature = "parallel"))]
pub(crate) fn chunks_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    F: Fn(usize, &mut [T]),
{
    let chunk = chunk.max(1);
    for (c, slice) in data.chunks_mut(chunk).enumerate() {
        f(c * chunk, slice);
    }
}
