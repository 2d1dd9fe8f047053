//! Execution mode for the data-parallel loops.
//!
//! With the `parallel` feature the [`Exec::Parallel`] mode runs on the rayon
//! global pool; without it every mode runs sequentially. Results are always
//! returned in input order so callers can reduce deterministically.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// Whether this mode actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    pub fn flat_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().flat_map_iter(f).collect();
        }
        items.iter().flat_map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u32> = (0..1000).collect();
        let a = Exec::Parallel.map(&xs, |x| x * 3);
        let b = Exec::Sequential.map(&xs, |x| x * 3);
        assert_eq!(a, b);
        let c = Exec::Parallel.flat_map(&xs, |&x| vec![x; (x % 3) as usize]);
        let d = Exec::Sequential.flat_map(&xs, |&x| vec![x; (x % 3) as usize]);
        assert_eq!(c, d);
    }
}
