//! Batch evaluation of independent jobs (verification, query sweeps),
//! data-parallel with the `parallel` feature and sequential without it.

/// Applies `f` to every item, in parallel when the `parallel` feature is
/// enabled. Results keep the input order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    pool().install(|| items.par_iter().map(f).collect())
}

/// Worker threads get the same stack as [`with_search_stack`], since batch
/// jobs are often searches themselves.
#[cfg(feature = "parallel")]
fn pool() -> &'static rayon::ThreadPool {
    static POOL: std::sync::OnceLock<rayon::ThreadPool> = std::sync::OnceLock::new();
    POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .stack_size(SEARCH_STACK_BYTES)
            .thread_name(|i| format!("kanren-batch-{i}"))
            .build()
            .expect("failed to build batch thread pool")
    })
}

/// Stack size for threads running deep searches.
pub const SEARCH_STACK_BYTES: usize = 512 << 20;

/// Runs `job` on a fresh thread with a [`SEARCH_STACK_BYTES`] stack. Deep
/// searches force long chains of suspended streams and need more stack
/// than the default.
pub fn with_search_stack<R, F>(job: F) -> R
where
    R: Send + 'static,
    F: FnOnce() -> R + Send + 'static,
{
    std::thread::Builder::new()
        .stack_size(SEARCH_STACK_BYTES)
        .spawn(job)
        .expect("failed to spawn search thread")
        .join()
        .unwrap_or_else(|panic| std::panic::resume_unwind(panic))
}
