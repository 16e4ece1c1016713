//! Fixed-size worker pool for independent objective evaluations.
//!
//! The pool is created once from the configured worker count and shared
//! by every derivative batch (and by grid-search run dispatch). Results
//! are always assembled in input order, so output is bitwise identical
//! for any worker count; a pool of size 1 runs the plain sequential
//! loop with no dispatch at all.

#[derive(Debug)]
pub struct WorkerPool {
    workers: usize,
    pool: Option<rayon::ThreadPool>,
}

impl WorkerPool {
    /// Pool with `nproc` workers. `nproc <= 1` builds the sequential pool.
    pub fn new(nproc: usize) -> Self {
        let workers = nproc.max(1);
        let pool = if workers == 1 {
            None
        } else {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("failed to build worker pool"),
            )
        };
        Self { workers, pool }
    }

    /// No-dispatch sequential pool.
    pub fn sequential() -> Self {
        Self::new(1)
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Evaluate `f(0..n)` and collect results in index order.
    ///
    /// Work is dealt out as one contiguous index chunk per worker
    /// (evaluation points of a derivative batch cost the same, so
    /// static chunks beat work-stealing here and keep scheduling out of
    /// the result order entirely).
    pub fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        let pool = match &self.pool {
            None => return (0..n).map(f).collect(),
            Some(p) if n > 1 => p,
            Some(_) => return (0..n).map(f).collect(),
        };
        let chunk = n.div_ceil(self.workers);
        let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
        pool.scope(|s| {
            for (w, slots) in out.chunks_mut(chunk).enumerate() {
                let f = &f;
                s.spawn(move |_| {
                    for (off, slot) in slots.iter_mut().enumerate() {
                        *slot = Some(f(w * chunk + off));
                    }
                });
            }
        });
        out.into_iter().map(|v| v.expect("worker filled slot")).collect()
    }
}
