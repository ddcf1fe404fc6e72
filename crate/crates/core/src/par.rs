//! Data-parallel helpers for the exhaustive scans.
//!
//! With the `parallel` feature the work is split over rayon's current thread
//! pool; a pool of one thread, or a build without the feature, takes a plain
//! sequential fold. Rayon keeps the left-to-right order of an indexed source
//! when it reduces, so both paths return identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of worker threads the helpers will use from the calling context.
pub fn current_workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Fold every item into an accumulator, merging per-chunk accumulators with
/// `merge`, which must be associative.
pub fn fold<T, A, I, F, M>(items: &[T], identity: I, fold: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &T) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if current_workers() > 1 {
            return items.par_iter().fold(&identity, &fold).reduce(&identity, &merge);
        }
    }
    let _ = &merge;
    items.iter().fold(identity(), fold)
}

/// Keep the items satisfying `pred`, in input order.
pub fn filter<T, P>(items: &[T], pred: P) -> Vec<T>
where
    T: Sync + Send + Clone,
    P: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if current_workers() > 1 {
            return items.par_iter().filter(|x| pred(x)).cloned().collect();
        }
    }
    items.iter().filter(|x| pred(x)).cloned().collect()
}

/// Map every item, keeping input order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if current_workers() > 1 {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Run `f` with at most `workers` threads. `workers <= 1` runs sequentially.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build();
        match pool {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_pooled_agree() {
        let items: Vec<u64> = (0..10_000).collect();
        let run = || {
            let sum = fold(&items, || 0u64, |a, x| a + x, |a, b| a + b);
            let order = fold(&items, Vec::new, |mut v, x| {
                if x % 997 == 0 {
                    v.push(*x)
                }
                v
            }, |mut a, b| {
                a.extend(b);
                a
            });
            let evens = filter(&items, |x| x % 2 == 0).len();
            let sq = map(&items, |x| x * x);
            (sum, order, evens, sq)
        };
        let one = with_workers(1, run);
        let four = with_workers(4, run);
        assert_eq!(one, four);
        assert_eq!(one.0, 49_995_000);
        assert!(one.1.windows(2).all(|w| w[0] < w[1]));
    }
}
