//! Multi-threaded driver for exhaustive square counting.
//!
//! Work is split into blocks of permutations sharing a size and a first
//! letter. Workers pull blocks from a shared cursor and the per-block counts
//! are summed per size afterwards, so the result does not depend on
//! scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;
use std::time::Instant;

use permsquare_core::solver::{count_block, count_size, MatchingSolver};
use permsquare_core::{CountFilter, CountReport, Error, Letter};

pub fn count_squares(max_size: usize, filter: &CountFilter, jobs: usize, bound: usize) -> Result<CountReport, Error> {
    if max_size > bound {
        return Err(Error::ResourceLimit { what: "count size", size: max_size, limit: bound });
    }
    let started = Instant::now();
    let blocks: Vec<(usize, Letter)> =
        (1..=max_size).rev().filter(|s| s % 2 == 0).flat_map(|s| (1..=s as Letter).map(move |f| (s, f))).collect();
    let block_counts = run_blocks(&blocks, filter, jobs.max(1));
    let mut counts = vec![0u64; max_size + 1];
    counts[0] = count_size(0, filter);
    for (&(size, _), c) in blocks.iter().zip(block_counts) {
        counts[size] += c;
    }
    Ok(CountReport { counts, filter: filter.clone(), elapsed: Some(started.elapsed()) })
}

fn run_blocks(blocks: &[(usize, Letter)], filter: &CountFilter, jobs: usize) -> Vec<u64> {
    let cursor = AtomicUsize::new(0);
    let mut results = vec![0u64; blocks.len()];
    let partials: Vec<Vec<(usize, u64)>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs.min(blocks.len()).max(1))
            .map(|_| {
                scope.spawn(|| {
                    let mut solver = MatchingSolver::new();
                    let mut done = Vec::new();
                    loop {
                        let i = cursor.fetch_add(1, Ordering::Relaxed);
                        let Some(&(size, first)) = blocks.get(i) else { break };
                        done.push((i, count_block(size, first, filter, &mut solver)));
                    }
                    done
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("counting worker panicked")).collect()
    });
    for (i, c) in partials.into_iter().flatten() {
        results[i] = c;
    }
    results
}
