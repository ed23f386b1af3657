//! Stripe-parallel enumeration over the `y > 0` rows.

use std::sync::atomic::{AtomicI64, Ordering};
use std::thread;

use sparse_thue_core::census::enumerate::{RawSolution, RowEnumerator};
use sparse_thue_core::{SolutionCensus, SparseForm};

/// Threads available to this process, at least 1.
pub fn available_workers() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Rows `1..=bound` cut into stripes of `stripe` rows; workers pull stripes
/// from a shared counter. The merged output is independent of `workers`.
pub fn enumerate_rows(engine: &RowEnumerator, workers: usize, stripe: i64) -> Vec<RawSolution> {
    let bound = engine.bound();
    let workers = workers.max(1);
    let stripe = stripe.max(1);
    if workers == 1 {
        return engine.rows(1, bound);
    }
    let next = AtomicI64::new(1);
    let mut parts: Vec<(i64, Vec<RawSolution>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let lo = next.fetch_add(stripe, Ordering::Relaxed);
                        if lo > bound {
                            break;
                        }
                        let hi = (lo + stripe - 1).min(bound);
                        mine.push((lo, engine.rows(lo, hi)));
                    }
                    mine
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("stripe worker panicked"))
            .collect()
    });
    parts.sort_by_key(|p| p.0);
    parts.into_iter().flat_map(|p| p.1).collect()
}

fn default_stripe(bound: i64, workers: usize) -> i64 {
    (bound / (workers as i64 * 16)).clamp(64, 1 << 16)
}

/// Same result as `SolutionCensus::enumerate`, with the rows split across
/// `workers` threads.
pub fn enumerate_parallel(form: &SparseForm, h: u64, bound: u64, workers: usize) -> SolutionCensus {
    let engine = RowEnumerator::new(form, h, bound);
    let upper = enumerate_rows(&engine, workers, default_stripe(engine.bound(), workers));
    SolutionCensus::from_raw(h, bound, engine.assemble(upper), engine.is_naive())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stripes_agree_with_serial() {
        let f = SparseForm::from_i64_terms(&[(-1, 0), (-1, 1), (1, 5)]).unwrap();
        let serial = SolutionCensus::enumerate(&f, 30, 2000);
        for workers in [1, 2, 3, 4] {
            let engine = RowEnumerator::new(&f, 30, 2000);
            let upper = enumerate_rows(&engine, workers, 7);
            let par = engine.assemble(upper);
            let got: Vec<_> = par.iter().map(|s| (s.x, s.y)).collect();
            let want: Vec<_> = serial.records.iter().map(|r| (r.x, r.y)).collect();
            assert_eq!(got, want, "workers = {workers}");
        }
        let c = enumerate_parallel(&f, 30, 2000, 4);
        assert_eq!(c.total(), serial.total());
    }
}
