//! Worker-count control for the per-frequency kernels.
//!
//! Kernels schedule independent frequency blocks on the ambient rayon pool
//! and collect results in frequency order, so the output is bit-identical
//! for every worker count.

use rayon::ThreadPoolBuilder;

/// Environment variable read by [`workers_from_env`].
pub const THREADS_ENV: &str = "QTGI_THREADS";

/// Runs `f` on a dedicated pool with `workers` threads.
pub fn with_workers<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Positive integer from `QTGI_THREADS`, if set and valid.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}
