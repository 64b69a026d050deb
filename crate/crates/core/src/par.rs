//! Data-parallel helpers. With the `parallel` feature and more than one worker,
//! work runs on a dedicated rayon pool of that size; otherwise it runs on the
//! calling thread. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of workers the parallel paths would use when given `requested`.
pub fn effective_workers(requested: usize) -> usize {
    if cfg!(feature = "parallel") {
        requested.max(1)
    } else {
        1
    }
}

/// Maps `f` over `items` with up to `workers` threads, preserving order.
pub fn map_ordered<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            return pool.install(|| items.par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    items.iter().map(f).collect()
}

/// Maps `f` over `items` on the current rayon pool (if any), preserving order.
/// Used for nested parallelism inside a [`map_ordered`] worker.
pub fn map_nested<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(&f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
