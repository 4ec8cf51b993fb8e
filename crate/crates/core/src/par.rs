//! Thin switch between rayon and sequential execution.
//!
//! Every entry point takes an explicit thread count. With the `parallel`
//! feature disabled, or with `threads <= 1`, the sequential path runs and
//! produces the same output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sorts `items` ascending. Keys are expected to be unique, so the result is
/// independent of the thread count.
pub(crate) fn sort_unstable<T: Ord + Send>(items: &mut [T], threads: usize) {
    #[cfg(feature = "parallel")]
    if threads > 1 {
        return install(threads, || items.par_sort_unstable());
    }
    let _ = threads;
    items.sort_unstable();
}

/// Runs `work(worker)` for every worker id in `0..workers` and returns the
/// outputs in worker order.
pub(crate) fn map_workers<R, F>(threads: usize, workers: usize, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if threads > 1 && workers > 1 {
        return install(threads, || (0..workers).into_par_iter().map(&work).collect());
    }
    let _ = threads;
    (0..workers).map(work).collect()
}

#[cfg(feature = "parallel")]
fn install<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(op),
        Err(err) => {
            log::warn!("could not build a {threads}-thread pool ({err}); using the global pool");
            op()
        }
    }
}

/// Number of hardware threads, used as the CLI default.
pub fn available_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Whether the crate was built with rayon support.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
