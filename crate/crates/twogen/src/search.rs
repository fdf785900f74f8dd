//! Permutation search split across worker threads.
//!
//! Each degree's `x` candidates are cut into blocks handed out through an
//! atomic counter. A block with a hit lowers the shared `best` mark and
//! later blocks are skipped, so the reported witness is the first one in
//! the sequential order no matter how the blocks were scheduled.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use twogen_core::homsearch::{
    all_permutations, hom_search, ScanResult, SearchError, SearchReport, Searcher, MAX_DEGREE,
};
use twogen_core::{PermAssignment, Presentation, SearchConfig, SearchOutcome, Word};

/// Like [`hom_search`], with `jobs` worker threads. `jobs <= 1` runs sequentially.
pub fn parallel_search(
    p: &Presentation,
    w: &Word,
    config: &SearchConfig,
    jobs: usize,
) -> Result<SearchReport, SearchError> {
    if jobs <= 1 {
        return hom_search(p, w, config);
    }
    if config.max_degree == 0 || config.max_degree > MAX_DEGREE {
        return Err(SearchError::InvalidDegree(config.max_degree));
    }
    let searcher = Searcher::new(p, w, config.target_order)?;
    let used = AtomicU64::new(0);
    let mut report = SearchReport {
        outcome: SearchOutcome::NotFound,
        visited: Vec::new(),
        evaluations: 0,
    };
    for degree in 1..=config.max_degree {
        let perms = all_permutations(degree);
        let block = (perms.len() / (jobs * 8)).max(1);
        let blocks = perms.len().div_ceil(block);
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let results: Mutex<Vec<Option<ScanResult>>> = Mutex::new(vec![None; blocks]);
        thread::scope(|s| {
            for _ in 0..jobs.min(blocks) {
                s.spawn(|| loop {
                    let b = next.fetch_add(1, Ordering::Relaxed);
                    if b >= blocks {
                        break;
                    }
                    if b > best.load(Ordering::Acquire) {
                        continue;
                    }
                    let xs = b * block..((b + 1) * block).min(perms.len());
                    let mut charge = |n: u64| used.fetch_add(n, Ordering::Relaxed) + n <= config.budget;
                    let res = searcher.scan(&perms, xs, &mut charge);
                    if res.hit.is_some() || res.exhausted {
                        best.fetch_min(b, Ordering::AcqRel);
                    }
                    results.lock().unwrap()[b] = Some(res);
                });
            }
        });
        let mut visited = 0;
        let mut settled = None;
        for res in results.into_inner().unwrap().into_iter().flatten() {
            visited += res.visited;
            report.evaluations += res.evaluations;
            if settled.is_some() {
                continue;
            }
            if let Some((xi, yi)) = res.hit {
                settled = Some(SearchOutcome::Found(
                    PermAssignment::new(perms[xi].clone(), perms[yi].clone()).expect("same degree"),
                ));
            } else if res.exhausted {
                settled = Some(SearchOutcome::BudgetExhausted);
            }
        }
        report.visited.push(visited);
        if let Some(outcome) = settled {
            report.outcome = outcome;
            return Ok(report);
        }
    }
    Ok(report)
}
