//! Order-preserving parallel map. Runs on rayon when the `parallel` feature
//! is enabled and sequentially otherwise; results always come back in input
//! order, so reports do not depend on scheduling.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether `Parallel` actually runs on a thread pool in this build.
    pub const PARALLEL_AVAILABLE: bool = cfg!(feature = "parallel");
}

pub fn map<T, R, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
        _ => items.into_iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_preserve_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map(Exec::Sequential, items.clone(), |x| x * x);
        let par = map(Exec::Parallel, items, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[999], 998_001);
    }
}
