//! Branch-parallel search driver. First-level branches are handed to a
//! worker pool in depth-first order; the only shared mutable state is a
//! monotone best-found branch index, a node accumulator for the budget, and
//! the claim counter. A worker aborts its branch when an earlier branch has
//! already produced a witness or the global budget is spent, so the final
//! witness (the find from the lowest branch index, which is the
//! lexicographically least involution) matches single-threaded output.

use hurwitz442_core::perm::Perm;
use hurwitz442_core::search::{
    certificate_from_tau, first_level_branches, search_branch, search_cover, SearchError,
    SearchOutcome, SearchStatus,
};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

pub fn parallel_search(d: u64, budget: u64, workers: usize) -> Result<SearchOutcome, SearchError> {
    if workers <= 1 || d == 1 {
        return search_cover(d, budget);
    }
    if d % 4 != 1 {
        return Err(SearchError::InvalidDegree(d));
    }
    let branches = first_level_branches(d as usize);
    let next_branch = AtomicUsize::new(0);
    let best_found = AtomicUsize::new(usize::MAX);
    let total_nodes = AtomicU64::new(0);
    let finds: Mutex<Vec<(usize, Perm)>> = Mutex::new(Vec::new());
    let incomplete = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next_branch.fetch_add(1, Ordering::Relaxed);
                if i >= branches.len() {
                    break;
                }
                if best_found.load(Ordering::Relaxed) < i {
                    // A witness in an earlier branch already wins; this
                    // branch can neither change the verdict nor the
                    // canonical witness.
                    continue;
                }
                let mut poll = |inc: u64| {
                    let prev = total_nodes.fetch_add(inc, Ordering::Relaxed);
                    prev + inc > budget || best_found.load(Ordering::Relaxed) < i
                };
                let outcome = search_branch(d as usize, branches[i], &mut poll);
                if let Some(tau) = outcome.tau {
                    best_found.fetch_min(i, Ordering::Relaxed);
                    finds.lock().unwrap().push((i, tau));
                } else if !outcome.completed {
                    incomplete.fetch_add(1, Ordering::Relaxed);
                }
            });
        }
    });

    let nodes_explored = total_nodes.load(Ordering::Relaxed);
    let mut finds = finds.into_inner().unwrap();
    finds.sort_by_key(|&(i, _)| i);
    if let Some((_, tau)) = finds.first() {
        let certificate = certificate_from_tau(d as usize, tau);
        assert!(certificate.verify().valid());
        return Ok(SearchOutcome {
            status: SearchStatus::Found,
            certificate: Some(certificate),
            nodes_explored,
        });
    }
    let status = if incomplete.load(Ordering::Relaxed) > 0 {
        SearchStatus::BudgetExceeded
    } else {
        SearchStatus::Exhausted
    };
    Ok(SearchOutcome {
        status,
        certificate: None,
        nodes_explored,
    })
}
