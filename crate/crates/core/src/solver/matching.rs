//! Exhaustive perfect-matching search, branching on the least uncovered
//! vertex.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

use super::witness::MatchingWitness;
use super::{deadline_of, Ctl, Outcome, Prune, PruneMode, Solve, SolveOptions};

struct MatchCtx<'a> {
    h: &'a Hypergraph,
    by_vertex: Vec<Vec<u32>>,
    full: u64,
}

fn parity_cut(prune: &Prune, k: usize, free: u64) -> bool {
    // a matching on the free vertices uses free/k more edges; with a pure
    // profile the parity of |A ∩ free| is forced
    let free_a = (free & prune.a_mask).count_ones() as usize;
    let r = (free.count_ones() as usize) / k;
    match prune.mode {
        PruneMode::AllOdd => r % 2 != free_a % 2,
        PruneMode::AllEven => free_a % 2 != 0,
    }
}

fn dfs(
    ctx: &MatchCtx,
    prune: Option<&Prune>,
    ctl: &mut Ctl,
    used: u64,
    picked: &mut Vec<u32>,
) -> bool {
    if used == ctx.full {
        return true;
    }
    if let Some(p) = prune {
        if parity_cut(p, ctx.h.k(), ctx.full & !used) {
            return false;
        }
    }
    let v = (!used).trailing_zeros() as usize;
    for &ei in &ctx.by_vertex[v] {
        let mask = ctx.h.edges()[ei as usize].mask();
        if mask & used != 0 {
            continue;
        }
        if !ctl.tick() {
            return false;
        }
        picked.push(ei);
        if dfs(ctx, prune, ctl, used | mask, picked) {
            return true;
        }
        picked.pop();
        if !ctl.running() {
            return false;
        }
    }
    false
}

/// Decides perfect-matching existence. Requires `k | n`.
pub fn find_perfect_matching(
    h: &Hypergraph,
    opts: &SolveOptions,
) -> Result<Solve<MatchingWitness>> {
    let (n, k) = (h.n(), h.k());
    if n % k != 0 {
        return Err(Error::InvalidInput(format!(
            "perfect matching needs k | n, found n = {n}, k = {k}"
        )));
    }
    let start = Instant::now();
    let mut by_vertex = vec![Vec::new(); n];
    for (i, e) in h.edges().iter().enumerate() {
        for v in e.iter() {
            by_vertex[v].push(i as u32);
        }
    }
    let ctx = MatchCtx {
        h,
        by_vertex,
        full: if n >= 64 { u64::MAX } else { (1u64 << n) - 1 },
    };
    let prune = match &opts.pruning {
        Some(p) => Prune::from_profile(h, p),
        None => None,
    };
    let mut ctl = Ctl::new(deadline_of(opts), None);
    let mut picked = Vec::with_capacity(n / k);
    let found = dfs(&ctx, prune.as_ref(), &mut ctl, 0, &mut picked);
    let outcome = if found {
        let edges = picked
            .iter()
            .map(|&i| h.edges()[i as usize])
            .collect::<Vec<VertexSet>>();
        Outcome::Found(MatchingWitness { edges })
    } else if ctl.budget_hit() {
        Outcome::OutOfBudget
    } else {
        Outcome::Exhausted
    };
    Ok(Solve {
        outcome,
        nodes_explored: ctl.nodes,
        wall: start.elapsed(),
    })
}
