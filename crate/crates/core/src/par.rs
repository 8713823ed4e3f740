//! Order-preserving scans over index ranges; rayon-backed when the
//! `parallel` feature is on, serial otherwise. Results never depend on the
//! number of worker threads.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn filter(range: Range<u64>, pred: impl Fn(u64) -> bool + Sync + Send) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().filter(|&i| pred(i)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.filter(|&i| pred(i)).collect()
    }
}

pub(crate) fn count(range: Range<u64>, pred: impl Fn(u64) -> bool + Sync + Send) -> u64 {
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().filter(|&i| pred(i)).count() as u64
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.filter(|&i| pred(i)).count() as u64
    }
}

pub(crate) fn find_first(range: Range<u64>, pred: impl Fn(u64) -> bool + Sync + Send) -> Option<u64> {
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().find_first(|&i| pred(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().find(|&i| pred(i))
    }
}

/// `f` over a slice, results in slice order.
pub(crate) fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
