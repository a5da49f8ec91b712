//! Execution strategy for the data-parallel parts of the crate.
//!
//! With the `parallel` feature (on by default) [`Parallelism::Rayon`] runs the
//! four recursive QSD children, simulator columns and batch jobs on the rayon
//! pool. Without the feature every strategy degrades to the sequential path.
//! Both paths produce bit-identical results.

/// How independent work items are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    #[default]
    Rayon,
}

impl Parallelism {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Rayon
    }
}

pub(crate) fn join<A, B, RA, RB>(p: Parallelism, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if p.is_parallel() {
        return rayon::join(a, b);
    }
    let _ = p;
    (a(), b())
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(p: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if p.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = p;
    items.iter().map(f).collect()
}

/// Applies `f` to consecutive `chunk`-sized pieces of `data`.
pub(crate) fn for_each_chunk_mut<T, F>(p: Parallelism, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if p.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk).for_each(f);
        return;
    }
    let _ = p;
    data.chunks_mut(chunk).for_each(f);
}
