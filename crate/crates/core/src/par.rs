//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) the helpers dispatch to rayon;
//! without it every call runs sequentially. Kernels are written as gathers so
//! that sequential and parallel runs perform identical arithmetic and give
//! bit-identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the heavy kernels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// The strategy actually used: `Parallel` degrades to `Sequential` when
    /// the crate is built without the `parallel` feature.
    pub fn effective(self) -> Exec {
        if cfg!(feature = "parallel") {
            self
        } else {
            Exec::Sequential
        }
    }

    /// Parallel only when the job is at least `min_len` items long.
    pub(crate) fn for_len(self, len: usize, min_len: usize) -> Exec {
        if len >= min_len {
            self.effective()
        } else {
            Exec::Sequential
        }
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel.
pub(crate) fn map_range<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

/// Fills `out[i] = f(i)`, possibly in parallel.
pub(crate) fn fill_indexed<T, F>(exec: Exec, out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => out.par_iter_mut().enumerate().for_each(|(i, slot)| *slot = f(i)),
        _ => out.iter_mut().enumerate().for_each(|(i, slot)| *slot = f(i)),
    }
}

/// Runs `f(chunk_index, chunk)` over fixed-size chunks of `data`.
pub(crate) fn for_each_chunk<T, F>(exec: Exec, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => data.par_chunks_mut(chunk).enumerate().for_each(|(k, c)| f(k, c)),
        _ => data.chunks_mut(chunk).enumerate().for_each(|(k, c)| f(k, c)),
    }
}

/// Maximum of `f(i)` over `0..n` (0.0 for an empty range).
pub(crate) fn max_range<F>(exec: Exec, n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    match exec.effective() {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(f).reduce(|| 0.0, f64::max),
        _ => (0..n).map(f).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_parallel_agree() {
        let a = map_range(Exec::Sequential, 1000, |i| (i as f64).sqrt());
        let b = map_range(Exec::Parallel, 1000, |i| (i as f64).sqrt());
        assert_eq!(a, b);
        let mut x = vec![0.0; 257];
        fill_indexed(Exec::Parallel, &mut x, |i| i as f64 * 0.5);
        assert_eq!(x[256], 128.0);
        assert_eq!(max_range(Exec::Parallel, 10, |i| i as f64), 9.0);
        assert_eq!(max_range(Exec::Sequential, 0, |i| i as f64), 0.0);
    }
}
