//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature the map runs on the rayon pool; without it,
//! or with [`Exec::Sequential`], it is a plain iterator. Output order always
//! follows input order, so results are identical either way.

/// Defaults to `Parallel` when the feature is enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(v.clone(), |x| x * x);
        let def = Exec::default().map(v, |x| x * x);
        assert_eq!(seq, def);
    }
}
