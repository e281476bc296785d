//! Execution mode for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) the [`Exec::Parallel`] mode
//! dispatches to rayon. Without the feature every mode runs sequentially, so
//! results never depend on the mode: each helper here collects in index order.

/// How to evaluate an embarrassingly parallel loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this mode will actually fan out to a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Work size (in scalar multiply-adds) below which matrix kernels stay
/// sequential even in parallel mode.
pub(crate) const PAR_THRESHOLD: usize = 1 << 16;

/// `(0..n).map(f).collect()`, possibly in parallel. Output order is always
/// the index order.
pub fn map_indices<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Map over a slice, possibly in parallel, preserving order.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Apply `f(row_index, row)` to each `cols`-wide row of `data`.
pub(crate) fn for_each_row<F>(exec: Exec, data: &mut [u32], cols: usize, f: F)
where
    F: Fn(usize, &mut [u32]) + Sync + Send,
{
    if cols == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, row)| f(i, row));
        return;
    }
    let _ = exec;
    data.chunks_mut(cols)
        .enumerate()
        .for_each(|(i, row)| f(i, row));
}

/// Pick parallel execution only when the job is big enough to pay for it.
pub(crate) fn auto(work: usize) -> Exec {
    if work >= PAR_THRESHOLD {
        Exec::Parallel
    } else {
        Exec::Sequential
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let seq = map_indices(Exec::Sequential, 100, |i| i * i);
        let par = map_indices(Exec::Parallel, 100, |i| i * i);
        assert_eq!(seq, par);
    }

    #[test]
    fn row_helper_visits_every_row_once() {
        let mut data = vec![0u32; 12];
        for_each_row(Exec::Parallel, &mut data, 3, |i, row| {
            for x in row.iter_mut() {
                *x = i as u32;
            }
        });
        assert_eq!(data, vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3]);
    }
}
