//! Sequential / data-parallel execution of the enumeration sweeps.
//!
//! With the `parallel` feature (default) the parallel strategy runs on
//! rayon; without it every strategy falls back to the sequential path.
//! Results are identical either way: searches report the least index and
//! maps preserve input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Least index in `0..total` satisfying `pred`.
pub fn find_first(total: u64, strategy: Strategy, pred: impl Fn(u64) -> bool + Sync + Send) -> Option<u64> {
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..total).into_par_iter().find_first(|&k| pred(k)),
        _ => (0..total).find(|&k| pred(k)),
    }
}

/// Every index in `0..total` satisfying `pred`, ascending.
pub fn filter(total: u64, strategy: Strategy, pred: impl Fn(u64) -> bool + Sync + Send) -> Vec<u64> {
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..total).into_par_iter().filter(|&k| pred(k)).collect(),
        _ => (0..total).filter(|&k| pred(k)).collect(),
    }
}

/// Order-preserving map.
pub fn map<T: Sync, U: Send>(items: &[T], strategy: Strategy, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `job` on a pool of `threads` workers (ignored without `parallel`).
pub fn with_threads<R: Send>(threads: usize, job: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
            return pool.install(job);
        }
    }
    let _ = threads;
    job()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(find_first(1000, s, |k| k % 97 == 13), Some(13));
            assert_eq!(find_first(10, s, |_| false), None);
            assert_eq!(filter(20, s, |k| k % 7 == 0), vec![0, 7, 14]);
            assert_eq!(map(&[1, 2, 3], s, |x| x * 2), vec![2, 4, 6]);
        }
        assert_eq!(with_threads(2, || 5), 5);
    }
}
