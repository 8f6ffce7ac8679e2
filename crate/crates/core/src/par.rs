//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel entry point in the crate takes an [`Execution`]. With the
//! `parallel` feature disabled, [`Execution::Parallel`] silently runs the
//! sequential path, so results never depend on the build configuration.
//! All reductions here are required to be associative and commutative
//! (histogram sums, minimum-index witnesses), which keeps results identical
//! across thread counts.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work actually fans out to worker threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Size the global worker pool. Returns the execution mode to use:
/// one worker means the sequential path.
pub fn configure_workers(workers: Option<usize>) -> Result<Execution, String> {
    match workers {
        Some(0) => Err("--workers must be at least 1".into()),
        Some(1) => Ok(Execution::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map(|_| Execution::Parallel)
            .map_err(|e| e.to_string()),
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Execution::Parallel),
        None => Ok(Execution::Parallel),
    }
}

/// Fold over `0..n` and combine partial results.
pub fn fold_range<A, Id, F, C>(exec: Execution, n: usize, identity: Id, fold: F, combine: C) -> A
where
    A: Send,
    Id: Fn() -> A + Send + Sync,
    F: Fn(A, usize) -> A + Send + Sync,
    C: Fn(A, A) -> A + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().fold(&identity, &fold).reduce(&identity, &combine);
    }
    let _ = (exec, &combine);
    (0..n).fold(identity(), fold)
}

/// Map over a slice, preserving order.
pub fn map_slice<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_matches_sequential() {
        let sum = |exec| fold_range(exec, 10_000, || 0u64, |a, i| a + (i as u64 % 97), |a, b| a + b);
        assert_eq!(sum(Execution::Sequential), sum(Execution::Parallel));
    }

    #[test]
    fn map_preserves_order() {
        let v: Vec<u32> = (0..500).collect();
        let seq = map_slice(Execution::Sequential, &v, |x| x * 3);
        let par = map_slice(Execution::Parallel, &v, |x| x * 3);
        assert_eq!(seq, par);
    }
}
