//! Exhaustive-sweep driver shared by the verification loops.
//!
//! Every check in this crate reduces to "probe indices 0..len, return the
//! first hit in index order" (index order = lexicographic word order). With
//! the `parallel` feature the sweep is partitioned across the rayon pool and
//! reduced with first-index-wins semantics; without it, or below a size
//! threshold, a plain sequential scan runs instead.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many probes the sequential scan wins; the pool only pays off
/// on bigger domains.
pub const PARALLEL_THRESHOLD: u64 = 1 << 12;

/// First hit in index order, sequential scan.
pub fn first_hit_seq<T, F>(len: u64, probe: F) -> Option<T>
where
    F: Fn(u64) -> Option<T>,
{
    (0..len).find_map(probe)
}

/// First hit in index order, partitioned across the rayon pool.
#[cfg(feature = "parallel")]
pub fn first_hit_par<T, F>(len: u64, probe: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    (0..len).into_par_iter().find_map_first(probe)
}

/// First hit in index order; picks the parallel path when it is compiled in
/// and the domain is large enough to amortize it.
pub fn first_hit<T, F>(len: u64, probe: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if len >= PARALLEL_THRESHOLD {
            return first_hit_par(len, probe);
        }
    }
    first_hit_seq(len, probe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_first_in_index_order() {
        let probe = |i: u64| if i % 1000 == 617 { Some(i) } else { None };
        assert_eq!(first_hit_seq(100_000, probe), Some(617));
        assert_eq!(first_hit(100_000, probe), Some(617));
        #[cfg(feature = "parallel")]
        assert_eq!(first_hit_par(100_000, probe), Some(617));
    }

    #[test]
    fn no_hit_is_none() {
        assert_eq!(first_hit(10_000, |_| None::<u64>), None);
    }

    #[test]
    fn empty_domain() {
        assert_eq!(first_hit(0, Some), None);
    }
}
