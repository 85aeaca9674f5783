//! Data-parallel helpers. With the `parallel` feature disabled every call
//! runs sequentially; results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// The result for the least index in `0..n` where `f` returns `Some`.
pub fn find_first<R, F>(exec: Execution, n: u64, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().filter_map(&f).find_first(|_| true);
    }
    let _ = exec;
    (0..n).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map(Execution::Sequential, &items, |x| x * x);
        let b = map(Execution::Parallel, &items, |x| x * x);
        assert_eq!(a, b);
        let f = |i: u64| (i % 97 == 96).then_some(i);
        assert_eq!(find_first(Execution::Sequential, 1000, f), Some(96));
        assert_eq!(find_first(Execution::Parallel, 1000, f), Some(96));
        assert_eq!(find_first(Execution::Parallel, 10, f), None);
    }
}
