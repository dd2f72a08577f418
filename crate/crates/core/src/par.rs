//! Execution mode for the data-parallel scans.
//!
//! With the `parallel` feature the scans run on the rayon pool; without it
//! every entry point falls back to a plain sequential loop. Results never
//! depend on the mode or the worker count.

use std::ops::Range;

/// How a scan is executed.
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
    #[cfg(feature = "parallel")]
    fn parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `items.iter().map(f).collect()`, order preserved.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Map over an index range then fold with an associative `reduce`.
pub fn map_reduce<R, M, F>(exec: Exec, range: Range<usize>, identity: R, map: M, reduce: F) -> R
where
    R: Send + Sync + Clone,
    M: Fn(usize) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.parallel() {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .with_min_len(256)
            .map(map)
            .reduce(|| identity.clone(), reduce);
    }
    let _ = exec;
    range.map(map).fold(identity, reduce)
}

/// Runs `f` on a pool of `threads` workers (0 = rayon default).
pub fn with_threads<R: Send, F: FnOnce() -> R + Send>(threads: usize, f: F) -> R {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}
