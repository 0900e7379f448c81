//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they fall back to plain loops with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether this build runs the parallel code paths.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// `(0..n).map(f)`, preserving order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `items.iter().map(f)`, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Runs `f` with at most `workers` threads (0 means the rayon default).
/// Sequential builds ignore the worker count.
pub fn with_workers<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
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
    fn order_is_preserved() {
        let v = with_workers(3, || map_range(1000, |i| i * i));
        assert!(v.iter().enumerate().all(|(i, &x)| x == i * i));
        let w = map_slice(&v, |x| x + 1);
        assert_eq!(w[10], 101);
    }
}
