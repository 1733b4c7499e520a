//! Index-range scans that run on the rayon pool when the `parallel`
//! feature is enabled and fall back to plain iterators otherwise.
//!
//! Every helper is order-preserving: `find_first` reports the witness with
//! the smallest index, and `map` returns results in index order, so reports
//! do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for exhaustive scans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// First `Some` produced by `f` over `0..n`, lowest index wins.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_map_first(f);
        }
        (0..n).find_map(f)
    }

    pub fn all<F>(self, n: usize, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().all(f);
        }
        (0..n).all(f)
    }

    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    pub fn filter<F>(self, n: usize, f: F) -> Vec<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&k| f(k)).collect();
        }
        (0..n).filter(|&k| f(k)).collect()
    }

    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }
}

/// Size limits and execution strategy shared by the bounded operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest operation table (rows × columns) an operation may build.
    pub max_cells: u128,
    /// Largest carrier size `enumerate_cmv` accepts.
    pub max_enum_size: usize,
    /// Node budget for backtracking searches (module actions, isomorphisms).
    pub max_search_nodes: u64,
    pub exec: Exec,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_cells: 100_000,
            max_enum_size: 6,
            max_search_nodes: 5_000_000,
            exec: Exec::default(),
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            exec: Exec::Sequential,
            ..Config::default()
        }
    }

    pub fn with_max_cells(mut self, cells: u128) -> Self {
        self.max_cells = cells;
        self
    }

    /// Errors when a carrier of `size` elements would exceed the table bound.
    pub fn check_size(&self, what: &'static str, size: u128) -> crate::Result<()> {
        let needed = size.saturating_mul(size);
        if needed > self.max_cells {
            return Err(crate::Error::SizeBound {
                what,
                needed,
                limit: self.max_cells,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_lowest_index() {
        for exec in [Exec::Parallel, Exec::Sequential] {
            let hit = exec.find_first(10_000, |k| (k % 997 == 5).then_some(k));
            assert_eq!(hit, Some(5));
        }
    }

    #[test]
    fn map_preserves_order() {
        let v = Exec::Parallel.map(1000, |k| k * 2);
        assert!(v.iter().enumerate().all(|(k, &x)| x == 2 * k));
    }

    #[test]
    fn size_bound() {
        let cfg = Config::default();
        assert!(cfg.check_size("t", 316).is_ok());
        assert!(cfg.check_size("t", 317).is_err());
    }
}
