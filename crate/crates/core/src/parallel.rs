//! Batch evaluation over independent inputs.
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] fans the
//! work out over the rayon thread pool. Without it, both strategies run on the
//! calling thread. Results always come back in input order, so any reduction
//! done afterwards is deterministic.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

/// Maps `f` over `items`, preserving order.
pub fn map_with<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        Strategy::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        #[cfg(not(feature = "parallel"))]
        Strategy::Parallel => items.iter().map(f).collect(),
    }
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_with(Strategy::default(), items, f)
}

/// `n` evenly spaced points from `start` to `stop`, both inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}
