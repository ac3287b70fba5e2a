//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it every helper degrades to the plain sequential loop, so results
//! are identical either way.

/// How a batch computation is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Serial,
    /// Run on a rayon pool; `threads == 0` uses the global pool.
    Parallel { threads: usize },
}

impl Exec {
    /// `1` means serial, `0` the global pool, anything else a dedicated pool.
    pub fn from_threads(threads: usize) -> Self {
        if threads == 1 {
            Exec::Serial
        } else {
            Exec::Parallel { threads }
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Exec::Parallel { .. })
    }

    /// Order-preserving map over `items`.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Exec::Serial => items.into_iter().map(f).collect(),
            Exec::Parallel { threads } => parallel_map(threads, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(threads: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || items.into_par_iter().map(&f).collect();
    if threads == 0 {
        return run();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(_threads: usize, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn max_over_range<F>(n: usize, f: F) -> Option<u8>
where
    F: Fn(usize) -> u8 + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).max()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn max_over_range<F>(n: usize, f: F) -> Option<u8>
where
    F: Fn(usize) -> u8 + Sync + Send,
{
    (0..n).map(f).max()
}

/// `true` iff `pred` holds for every item; evaluation order is unspecified.
#[cfg(feature = "parallel")]
pub(crate) fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().all(pred)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn all<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.iter().all(pred)
}

/// Order-preserving map on the global pool (or sequentially).
#[cfg(feature = "parallel")]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serial_and_parallel_maps_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let serial = Exec::Serial.map(items.clone(), |x| x * x);
        let parallel = Exec::Parallel { threads: 2 }.map(items, |x| x * x);
        assert_eq!(serial, parallel);
    }

    #[test]
    fn thread_count_mapping() {
        assert_eq!(Exec::from_threads(1), Exec::Serial);
        assert_eq!(Exec::from_threads(4), Exec::Parallel { threads: 4 });
    }
}
