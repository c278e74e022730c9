//! Execution strategy for degreewise computations.
//!
//! Most verification work factors into independent per-degree jobs, so the
//! workbench threads an [`Exec`] through the hot paths. With the `par`
//! feature enabled (the default) `Exec::Parallel` fans jobs out over rayon;
//! `Exec::Sequential` keeps everything on the calling thread, which is
//! useful for profiling and as a baseline in the bench suite. Without the
//! feature both variants run sequentially.

#[cfg(feature = "par")]
use rayon::prelude::*;

/// How degreewise jobs are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Run jobs one after another on the calling thread.
    Sequential,
    /// Fan jobs out over the rayon thread pool when the `par` feature is on.
    #[default]
    Parallel,
}

impl Exec {
    /// Apply `f` to every element of `items`, preserving order.
    pub fn map_collect<T, U, F>(self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "par")]
            Exec::Parallel => items.into_par_iter().map(f).collect(),
            #[cfg(not(feature = "par"))]
            Exec::Parallel => items.into_iter().map(f).collect(),
        }
    }

    /// Apply `f` to every degree in `0..=max_degree`, preserving order.
    pub fn map_degrees<U, F>(self, max_degree: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        self.map_collect((0..=max_degree).collect(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_preserve_order() {
        let seq = Exec::Sequential.map_degrees(16, |n| n * n);
        let par = Exec::Parallel.map_degrees(16, |n| n * n);
        assert_eq!(seq, par);
        assert_eq!(seq[3], 9);
    }
}
