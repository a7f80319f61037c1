//! Exhaustive decision procedures for Hamilton `ℓ`-cycles, `(k/2)`-paths,
//! perfect matchings, connecting sets and absorbing paths.
//!
//! All searches are complete: a negative answer means the entire (symmetry-
//! reduced) space was exhausted. An optional wall-clock budget turns an
//! unfinished search into an explicit undecided outcome instead of a wrong
//! answer. Parity pruning against a supplied bipartition is optional and
//! cuts branches only when the edge-parity profile is pure (all edges odd or
//! all edges even), in which case block parities along a cycle are forced.

mod half_cycle;
mod lcycle;
mod matching;
mod paths;
mod witness;

pub use half_cycle::find_hamilton_half_cycle;
pub use lcycle::find_hamilton_l_cycle;
pub use matching::find_perfect_matching;
pub use paths::{count_connecting_sets, find_absorbing_path, find_half_path};
pub use witness::{AbsorbingPathWitness, CycleWitness, MatchingWitness, PathWitness};

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use crate::hypergraph::{Bipartition, Hypergraph, Parity};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Deterministic mode always returns the first witness in ascending
    /// bitmask order and runs single-threaded so that node counts reproduce.
    pub deterministic: bool,
    /// Wall-clock budget; exceeding it yields `Outcome::OutOfBudget`.
    pub budget: Option<Duration>,
    /// Worker count for fast (non-deterministic) mode; `0` uses the global
    /// thread pool default, `1` stays sequential.
    pub jobs: usize,
    /// Enables parity pruning relative to this bipartition.
    pub pruning: Option<Bipartition>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            deterministic: true,
            budget: None,
            jobs: 1,
            pruning: None,
        }
    }
}

impl SolveOptions {
    pub fn with_pruning(p: Bipartition) -> Self {
        SolveOptions {
            pruning: Some(p),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<W> {
    Found(W),
    Exhausted,
    OutOfBudget,
}

impl<W> Outcome<W> {
    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Outcome::Exhausted)
    }

    /// CLI decision word.
    pub fn decision(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "yes",
            Outcome::Exhausted => "no",
            Outcome::OutOfBudget => "undecided",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Solve<W> {
    pub outcome: Outcome<W>,
    pub nodes_explored: u64,
    pub wall: Duration,
}

/// Pure edge-parity profiles enable forced-bit pruning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PruneMode {
    AllOdd,
    AllEven,
}

pub(crate) struct Prune {
    pub a_mask: u64,
    pub mode: PruneMode,
}

impl Prune {
    /// Derives a pruning context from a bipartition: only pure profiles
    /// allow cuts. An edgeless graph exhausts instantly either way.
    pub fn from_profile(h: &Hypergraph, p: &Bipartition) -> Option<Prune> {
        if h.edge_count() == 0 {
            return None;
        }
        let mut odd = 0usize;
        for e in h.edges() {
            if p.parity_of(*e) == Parity::Odd {
                odd += 1;
            }
        }
        let mode = if odd == 0 {
            PruneMode::AllEven
        } else if odd == h.edge_count() {
            PruneMode::AllOdd
        } else {
            return None;
        };
        Some(Prune {
            a_mask: p.a().mask(),
            mode,
        })
    }
}

/// Search bookkeeping: node counts, budget deadline and a cross-worker
/// cancellation flag for fast mode.
pub(crate) struct Ctl<'a> {
    pub nodes: u64,
    deadline: Option<Instant>,
    cancel: Option<&'a AtomicBool>,
    stopped: bool,
    budget_hit: bool,
}

impl<'a> Ctl<'a> {
    pub fn new(deadline: Option<Instant>, cancel: Option<&'a AtomicBool>) -> Self {
        Ctl {
            nodes: 0,
            deadline,
            cancel,
            stopped: false,
            budget_hit: false,
        }
    }

    /// Counts one search node; returns false once the search must unwind.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stopped = true;
                    self.budget_hit = true;
                }
            }
            if let Some(c) = self.cancel {
                if c.load(Ordering::Relaxed) {
                    self.stopped = true;
                }
            }
        }
        !self.stopped
    }

    #[inline]
    pub fn running(&self) -> bool {
        !self.stopped
    }

    pub fn budget_hit(&self) -> bool {
        self.budget_hit
    }
}

pub(crate) fn deadline_of(opts: &SolveOptions) -> Option<Instant> {
    opts.budget.map(|b| Instant::now() + b)
}
