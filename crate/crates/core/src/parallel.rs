//! Scoped worker pools so that every parallel search honors an explicit
//! thread count.

/// Runs `f` inside a rayon pool with `threads` workers (0 means the rayon
/// default, one per core).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(f)
}
