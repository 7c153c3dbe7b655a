//! Exhaustive decision procedure for existence of a certificate triple at a
//! given degree, with symmetry reduction.
//!
//! The search fixes `sigma0` canonically as `(0)(1 2 3 4)(5 6 7 8)...` and
//! enumerates involutions `tau` of cycle type `(1, 2^{2k})` by backtracking
//! over transposition choices; `sigma1 := sigma0^{-1} tau` is accepted when
//! it has cycle type `(1, 4^k)` and `<sigma0, sigma1>` is transitive, and
//! then `sigma_inf := tau`. Every pairing decision adds two edges to the
//! partial functional graph of `sigma1`, which stays a disjoint union of
//! paths and cycles; branches die as soon as a path grows past 3 edges, a
//! cycle closes at length other than 4, or a second fixed point appears.
//!
//! Completeness: conjugation by any element of the symmetric group maps
//! solutions to solutions and can bring `sigma0` to the canonical form, so
//! exhausting the reduced space decides existence. The centralizer of the
//! canonical `sigma0` acts transitively on the non-fixed points, so the
//! fixed point of `tau` only needs the two representatives `{0, 1}`.
//!
//! Enumeration is depth-first in lexicographic order of the image vector of
//! `tau`: the first witness found is the lexicographically least one in the
//! reduced space, which makes single-threaded and branch-parallel runs
//! return the same witness.

use crate::perm::{is_transitive, CoverCertificate, Perm, Provenance};
use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Node increments are reported to the abort poll in batches of this size.
const POLL_BATCH: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("degree {0} is not congruent to 1 mod 4")]
    InvalidDegree(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Found => "Found",
            SearchStatus::Exhausted => "Exhausted",
            SearchStatus::BudgetExceeded => "BudgetExceeded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub certificate: Option<CoverCertificate>,
    pub nodes_explored: u64,
}

/// The canonical `sigma0`, with cycles `(0)(1 2 3 4)(5 6 7 8)...`.
pub fn canonical_sigma0(d: usize) -> Perm {
    Perm::from_fn(d, |x| {
        if x == 0 {
            0
        } else if x % 4 == 0 {
            x - 3
        } else {
            x + 1
        }
    })
}

/// A first-level branch: the fixed point of `tau` and the partner chosen
/// for the smallest point to pair. Branches are listed in the same order
/// depth-first search would reach them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBranch {
    pub fixed_point: usize,
    pub first_point: usize,
    pub first_partner: usize,
}

pub fn first_level_branches(d: usize) -> Vec<SearchBranch> {
    let mut out = Vec::new();
    if d < 5 {
        return out;
    }
    for fixed_point in [0usize, 1] {
        let first_point = if fixed_point == 0 { 1 } else { 0 };
        for first_partner in 2..d {
            out.push(SearchBranch {
                fixed_point,
                first_point,
                first_partner,
            });
        }
    }
    out
}

/// Builds the certificate for a found involution.
pub fn certificate_from_tau(d: usize, tau: &Perm) -> CoverCertificate {
    let sigma0 = canonical_sigma0(d);
    let sigma1 = sigma0.inverse().compose(tau).expect("same degree");
    CoverCertificate::new(sigma0, sigma1, tau.clone(), Provenance::Search)
        .expect("search degrees are 1 mod 4")
}

/// Result of exhausting (or aborting) one first-level branch.
#[derive(Debug, Clone)]
pub struct BranchOutcome {
    /// First involution found in this branch, in depth-first order.
    pub tau: Option<Perm>,
    pub nodes: u64,
    /// Whether the branch was fully enumerated (false after an abort).
    pub completed: bool,
}

/// Partial `sigma1` graph: disjoint paths tracked by their endpoints.
struct ChainState {
    sigma0_inv: Vec<usize>,
    paired: Vec<bool>,
    has_out: Vec<bool>,
    has_in: Vec<bool>,
    /// For the end point of a path, where the path starts.
    path_start: Vec<usize>,
    /// For the start point of a path, where the path ends.
    path_end: Vec<usize>,
    /// Edge count of the path, stored at both endpoints.
    path_len: Vec<usize>,
    fixed_cycles: usize,
    four_cycles: usize,
}

enum EdgeUndo {
    Cycle {
        x: usize,
        y: usize,
        was_fixed: bool,
    },
    Merge {
        x: usize,
        y: usize,
        sx: usize,
        ey: usize,
        old_len_sx: usize,
        old_len_ey: usize,
    },
}

impl ChainState {
    fn new(d: usize) -> Self {
        let sigma0_inv: Vec<usize> = {
            let s = canonical_sigma0(d).inverse();
            (0..d).map(|x| s.apply(x)).collect()
        };
        ChainState {
            sigma0_inv,
            paired: vec![false; d],
            has_out: vec![false; d],
            has_in: vec![false; d],
            path_start: (0..d).collect(),
            path_end: (0..d).collect(),
            path_len: vec![0; d],
            fixed_cycles: 0,
            four_cycles: 0,
        }
    }

    /// Adds the `sigma1` edge `x -> y`; `None` means the branch is dead.
    fn add_edge(&mut self, x: usize, y: usize) -> Option<EdgeUndo> {
        debug_assert!(!self.has_out[x] && !self.has_in[y]);
        let sx = self.path_start[x];
        if sx == y {
            // Closing the path into a cycle of len+1 edges.
            let cycle_len = self.path_len[x] + 1;
            if cycle_len == 1 {
                if self.fixed_cycles == 1 {
                    return None;
                }
                self.fixed_cycles = 1;
                self.has_out[x] = true;
                self.has_in[y] = true;
                return Some(EdgeUndo::Cycle {
                    x,
                    y,
                    was_fixed: true,
                });
            }
            if cycle_len != 4 {
                return None;
            }
            self.four_cycles += 1;
            self.has_out[x] = true;
            self.has_in[y] = true;
            return Some(EdgeUndo::Cycle {
                x,
                y,
                was_fixed: false,
            });
        }
        // Merging two paths: start(x's path) ... x -> y ... end(y's path).
        let ey = self.path_end[y];
        let new_len = self.path_len[x] + 1 + self.path_len[y];
        if new_len >= 4 {
            // An open path of 4 or more edges can only close into a cycle
            // of length at least 5.
            return None;
        }
        let undo = EdgeUndo::Merge {
            x,
            y,
            sx,
            ey,
            old_len_sx: self.path_len[sx],
            old_len_ey: self.path_len[ey],
        };
        self.has_out[x] = true;
        self.has_in[y] = true;
        self.path_start[ey] = sx;
        self.path_end[sx] = ey;
        self.path_len[sx] = new_len;
        self.path_len[ey] = new_len;
        Some(undo)
    }

    fn undo_edge(&mut self, undo: EdgeUndo) {
        match undo {
            EdgeUndo::Cycle { x, y, was_fixed } => {
                self.has_out[x] = false;
                self.has_in[y] = false;
                if was_fixed {
                    self.fixed_cycles = 0;
                } else {
                    self.four_cycles -= 1;
                }
            }
            EdgeUndo::Merge {
                x,
                y,
                sx,
                ey,
                old_len_sx,
                old_len_ey,
            } => {
                self.has_out[x] = false;
                self.has_in[y] = false;
                // Split back into the paths sx -> .. -> x and y -> .. -> ey.
                self.path_start[ey] = y;
                self.path_end[sx] = x;
                self.path_start[x] = sx;
                self.path_end[y] = ey;
                self.path_len[sx] = old_len_sx;
                self.path_len[x] = old_len_sx;
                self.path_len[y] = old_len_ey;
                self.path_len[ey] = old_len_ey;
            }
        }
    }

    /// Adds the two `sigma1` edges of the pairing `tau(u) = v`.
    fn add_pair(&mut self, u: usize, v: usize) -> Option<(EdgeUndo, Option<EdgeUndo>)> {
        let first = self.add_edge(u, self.sigma0_inv[v])?;
        match self.add_edge(v, self.sigma0_inv[u]) {
            Some(second) => Some((first, Some(second))),
            None => {
                self.undo_edge(first);
                None
            }
        }
    }

    fn undo_pair(&mut self, undo: (EdgeUndo, Option<EdgeUndo>)) {
        if let Some(second) = undo.1 {
            self.undo_edge(second);
        }
        self.undo_edge(undo.0);
    }
}

struct Searcher<'a> {
    d: usize,
    state: ChainState,
    tau: Vec<usize>,
    nodes: u64,
    unreported: u64,
    aborted: bool,
    found: Option<Perm>,
    poll: &'a mut dyn FnMut(u64) -> bool,
}

impl<'a> Searcher<'a> {
    fn bump(&mut self) {
        self.nodes += 1;
        self.unreported += 1;
        if self.unreported >= POLL_BATCH {
            if (self.poll)(self.unreported) {
                self.aborted = true;
            }
            self.unreported = 0;
        }
    }

    fn flush(&mut self) {
        if self.unreported > 0 {
            (self.poll)(self.unreported);
            self.unreported = 0;
        }
    }

    /// Depth-first over pairings, smallest unpaired point first, partners
    /// ascending: lexicographic order on the image vector of `tau`.
    fn dfs(&mut self, pairs_left: usize) {
        if self.aborted || self.found.is_some() {
            return;
        }
        if pairs_left == 0 {
            self.check_candidate();
            return;
        }
        let Some(u) = self.state.paired.iter().position(|&p| !p) else {
            return;
        };
        for v in (u + 1)..self.d {
            if self.state.paired[v] {
                continue;
            }
            self.bump();
            if self.aborted {
                return;
            }
            if let Some(undo) = self.state.add_pair(u, v) {
                self.state.paired[u] = true;
                self.state.paired[v] = true;
                self.tau[u] = v;
                self.tau[v] = u;
                self.dfs(pairs_left - 1);
                self.tau[u] = u;
                self.tau[v] = v;
                self.state.paired[u] = false;
                self.state.paired[v] = false;
                self.state.undo_pair(undo);
            }
            if self.aborted || self.found.is_some() {
                return;
            }
        }
    }

    fn check_candidate(&mut self) {
        debug_assert_eq!(self.state.fixed_cycles, 1);
        debug_assert_eq!(self.state.four_cycles, (self.d - 1) / 4);
        let tau = Perm::from_images(self.tau.iter().map(|&x| x as u32).collect())
            .expect("pairings form an involution");
        let sigma0 = canonical_sigma0(self.d);
        let sigma1 = sigma0.inverse().compose(&tau).expect("same degree");
        if is_transitive(&[sigma0, sigma1], self.d) {
            self.found = Some(tau);
        }
    }
}

/// Runs one first-level branch to completion (or abort). The poll closure
/// receives node-count increments and returns `true` to abort.
pub fn search_branch(
    d: usize,
    branch: SearchBranch,
    poll: &mut dyn FnMut(u64) -> bool,
) -> BranchOutcome {
    debug_assert!(d % 4 == 1 && d >= 5);
    let mut state = ChainState::new(d);
    let tau: Vec<usize> = (0..d).collect();
    let f = branch.fixed_point;

    // The fixed point contributes the edge f -> sigma0^{-1}(f) up front.
    let fixed_edge = state.add_edge(f, state.sigma0_inv[f]);
    if fixed_edge.is_none() {
        return BranchOutcome {
            tau: None,
            nodes: 0,
            completed: true,
        };
    }
    state.paired[f] = true;

    let mut searcher = Searcher {
        d,
        state,
        tau,
        nodes: 0,
        unreported: 0,
        aborted: false,
        found: None,
        poll,
    };
    searcher.bump();
    let (u, v) = (branch.first_point, branch.first_partner);
    if !searcher.aborted {
        if let Some(undo) = searcher.state.add_pair(u, v) {
            searcher.state.paired[u] = true;
            searcher.state.paired[v] = true;
            searcher.tau[u] = v;
            searcher.tau[v] = u;
            searcher.dfs((d - 1) / 2 - 1);
            searcher.tau[u] = u;
            searcher.tau[v] = v;
            searcher.state.paired[u] = false;
            searcher.state.paired[v] = false;
            searcher.state.undo_pair(undo);
        }
    }
    searcher.flush();
    let completed = !searcher.aborted;
    BranchOutcome {
        tau: searcher.found,
        nodes: searcher.nodes,
        completed,
    }
}

/// Decides existence of a certificate of degree `d` within the node
/// budget, single-threaded, visiting branches in depth-first order.
/// `Exhausted` is reported only after complete enumeration.
pub fn search_cover(d: u64, budget: u64) -> Result<SearchOutcome, SearchError> {
    if d % 4 != 1 {
        return Err(SearchError::InvalidDegree(d));
    }
    if d == 1 {
        return Ok(SearchOutcome {
            status: SearchStatus::Found,
            certificate: Some(CoverCertificate::trivial(Provenance::Search)),
            nodes_explored: 0,
        });
    }
    let d = d as usize;
    let mut total_nodes = 0u64;
    let mut over_budget = false;
    for branch in first_level_branches(d) {
        let mut local = 0u64;
        let mut poll = |inc: u64| {
            local += inc;
            total_nodes + local > budget
        };
        let outcome = search_branch(d, branch, &mut poll);
        total_nodes += outcome.nodes;
        if let Some(tau) = outcome.tau {
            let certificate = certificate_from_tau(d, &tau);
            assert!(certificate.verify().valid());
            return Ok(SearchOutcome {
                status: SearchStatus::Found,
                certificate: Some(certificate),
                nodes_explored: total_nodes,
            });
        }
        if !outcome.completed {
            over_budget = true;
            break;
        }
    }
    Ok(SearchOutcome {
        status: if over_budget {
            SearchStatus::BudgetExceeded
        } else {
            SearchStatus::Exhausted
        },
        certificate: None,
        nodes_explored: total_nodes,
    })
}

/// One row of the construction/search consistency survey.
#[derive(Debug, Clone)]
pub struct SurveyRow {
    pub d: u64,
    pub representations: Vec<(u64, u64)>,
    /// Certificate validity (checks (i)-(iv)) of the lattice construction,
    /// when representable.
    pub lattice_valid: Option<bool>,
    /// Generated order equals `4d` (always false at the degenerate d = 1,
    /// where the one-point action collapses the group).
    pub lattice_order_is_4d: Option<bool>,
    /// Certificate validity of the prime construction, when `d` is prime.
    pub prime_valid: Option<bool>,
    pub search_status: Option<SearchStatus>,
    pub search_nodes: Option<u64>,
    pub consistent: bool,
}

/// For each `d = 1 mod 4` in range: representability from the brute-force
/// oracle, construction results where applicable, the search verdict below
/// `search_cap`, and a cross-column consistency flag.
pub fn survey(dmin: u64, dmax: u64, search_cap: u64, budget: u64) -> Vec<SurveyRow> {
    let mut rows = Vec::new();
    let mut d = dmin.max(1);
    while d % 4 != 1 {
        d += 1;
    }
    while d <= dmax {
        let representations = crate::gaussian::sum_two_squares(d);
        let representable = !representations.is_empty();

        let (lattice_valid, lattice_order_is_4d) = if representable {
            let (a, b) = representations[0];
            let (cert, _) = crate::lattice::build_lattice_cover(a as i64, b as i64)
                .expect("odd representable d");
            let report = cert.verify();
            (Some(report.valid()), Some(report.order_is_4d))
        } else {
            (None, None)
        };

        let prime_valid = if crate::fp::is_prime(d) {
            let (cert, _) = crate::fp::build_prime_cover(d).expect("prime 1 mod 4");
            Some(cert.verify().valid())
        } else {
            None
        };

        let (search_status, search_nodes) = if d <= search_cap {
            let outcome = search_cover(d, budget).expect("d = 1 mod 4");
            (Some(outcome.status), Some(outcome.nodes_explored))
        } else {
            (None, None)
        };

        let mut consistent = lattice_valid.unwrap_or(true) && prime_valid.unwrap_or(true);
        // The generated order must be 4d whenever the action is faithful.
        if d > 1 {
            consistent &= lattice_order_is_4d.unwrap_or(true);
        }
        match search_status {
            Some(SearchStatus::Found) => consistent &= representable,
            Some(SearchStatus::Exhausted) => consistent &= !representable,
            _ => {}
        }

        rows.push(SurveyRow {
            d,
            representations,
            lattice_valid,
            lattice_order_is_4d,
            prime_valid,
            search_status,
            search_nodes,
            consistent,
        });
        d += 4;
    }
    rows
}
