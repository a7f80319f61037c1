//! `(k/2)`-path search with prescribed ends, connecting-set counting and
//! absorbing-path search.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::{binomial_checked, subsets_of_set, Hypergraph, VertexSet};

use super::witness::{AbsorbingPathWitness, PathWitness};
use super::{deadline_of, Ctl, Outcome, Solve, SolveOptions};

fn check_half_block(h: &Hypergraph, name: &str, s: VertexSet) -> Result<()> {
    let half = h.k() / 2;
    if s.len() != half {
        return Err(Error::InvalidInput(format!(
            "{name} must have k/2 = {half} vertices, found {}",
            s.len()
        )));
    }
    if !s.within(h.n()) {
        return Err(Error::InvalidInput(format!(
            "{name} = {s} not contained in [0, {})",
            h.n()
        )));
    }
    Ok(())
}

/// Middle blocks in ascending order; the path must use exactly the pool.
fn path_dfs(
    h: &Hypergraph,
    cur: VertexSet,
    end: VertexSet,
    pool: VertexSet,
    acc: &mut Vec<VertexSet>,
    ctl: &mut Ctl,
) -> bool {
    if pool.is_empty() {
        return h.contains_edge(cur.union(end));
    }
    let half = h.k() / 2;
    for cand in subsets_of_set(pool, half) {
        if !ctl.tick() {
            return false;
        }
        if !h.contains_edge(cur.union(cand)) {
            continue;
        }
        acc.push(cand);
        if path_dfs(h, cand, end, pool.difference(cand), acc, ctl) {
            return true;
        }
        acc.pop();
        if !ctl.running() {
            return false;
        }
    }
    false
}

/// Finds a `(k/2)`-path with ends `start` and `end` using exactly the
/// vertices of `allowed`. The number of interior vertices must be a
/// multiple of `k/2`.
pub fn find_half_path(
    h: &Hypergraph,
    start: VertexSet,
    end: VertexSet,
    allowed: VertexSet,
    opts: &SolveOptions,
) -> Result<Solve<PathWitness>> {
    if h.k() % 2 != 0 {
        return Err(Error::InvalidInput("path search needs even k".into()));
    }
    check_half_block(h, "start", start)?;
    check_half_block(h, "end", end)?;
    if !start.is_disjoint(end) {
        return Err(Error::InvalidInput("start and end must be disjoint".into()));
    }
    if !start.union(end).is_subset_of(allowed) || !allowed.within(h.n()) {
        return Err(Error::InvalidInput(
            "allowed set must contain both ends and lie in [0, n)".into(),
        ));
    }
    let pool = allowed.difference(start.union(end));
    if pool.len() % (h.k() / 2) != 0 {
        return Err(Error::InvalidInput(format!(
            "interior size {} is not a multiple of k/2",
            pool.len()
        )));
    }
    let t0 = Instant::now();
    let mut ctl = Ctl::new(deadline_of(opts), None);
    let mut acc = vec![start];
    let found = path_dfs(h, start, end, pool, &mut acc, &mut ctl);
    let outcome = if found {
        acc.push(end);
        Outcome::Found(PathWitness { blocks: acc })
    } else if ctl.budget_hit() {
        Outcome::OutOfBudget
    } else {
        Outcome::Exhausted
    };
    Ok(Solve {
        outcome,
        nodes_explored: ctl.nodes,
        wall: t0.elapsed(),
    })
}

/// True when the induced subgraph on `s ∪ pool ∪ t` contains a `(k/2)`-path
/// with ends `s` and `t`; the path may leave part of the pool unused.
fn connects(h: &Hypergraph, cur: VertexSet, end: VertexSet, pool: VertexSet) -> bool {
    if h.contains_edge(cur.union(end)) {
        return true;
    }
    let half = h.k() / 2;
    if pool.len() < half {
        return false;
    }
    for cand in subsets_of_set(pool, half) {
        if h.contains_edge(cur.union(cand)) && connects(h, cand, end, pool.difference(cand)) {
            return true;
        }
    }
    false
}

/// Counts the `(3k/2)`-sets `C`, disjoint from `s ∪ t`, whose induced
/// subgraph together with the ends carries a `(k/2)`-path with ends `s`
/// and `t`.
pub fn count_connecting_sets(h: &Hypergraph, s: VertexSet, t: VertexSet) -> Result<u64> {
    if h.k() % 2 != 0 {
        return Err(Error::InvalidInput("connecting sets need even k".into()));
    }
    check_half_block(h, "s", s)?;
    check_half_block(h, "t", t)?;
    if !s.is_disjoint(t) {
        return Err(Error::InvalidInput("s and t must be disjoint".into()));
    }
    let others = s.union(t).complement_within(h.n());
    let size = 3 * h.k() / 2;
    if h.contains_edge(s.union(t)) {
        // every candidate connects through the direct edge
        return Ok(binomial_checked(others.len(), size).unwrap_or(0));
    }
    let mut count = 0u64;
    for c in subsets_of_set(others, size) {
        if connects(h, s, t, c) {
            count += 1;
        }
    }
    Ok(count)
}

/// Absorbing-path search for a `(k/2)`-set `x`: a 5-block path `P` avoiding
/// `x` such that the vertices of `P` together with `x` carry a 6-block path
/// with the same ends. Returns the first configuration in ascending order.
pub fn find_absorbing_path(
    h: &Hypergraph,
    x: VertexSet,
    opts: &SolveOptions,
) -> Result<Solve<AbsorbingPathWitness>> {
    if h.k() % 2 != 0 {
        return Err(Error::InvalidInput("absorbing paths need even k".into()));
    }
    check_half_block(h, "x", x)?;
    let t0 = Instant::now();
    let mut ctl = Ctl::new(deadline_of(opts), None);
    let found = absorb_dfs(h, x, &mut ctl);
    let outcome = match found {
        Some(w) => Outcome::Found(w),
        None if ctl.budget_hit() => Outcome::OutOfBudget,
        None => Outcome::Exhausted,
    };
    Ok(Solve {
        outcome,
        nodes_explored: ctl.nodes,
        wall: t0.elapsed(),
    })
}

fn absorb_dfs(h: &Hypergraph, x: VertexSet, ctl: &mut Ctl) -> Option<AbsorbingPathWitness> {
    let half = h.k() / 2;
    let free = x.complement_within(h.n());
    if free.len() < 5 * half {
        return None;
    }
    let mut blocks: Vec<VertexSet> = Vec::with_capacity(5);
    fn place(
        h: &Hypergraph,
        x: VertexSet,
        free: VertexSet,
        used: VertexSet,
        blocks: &mut Vec<VertexSet>,
        ctl: &mut Ctl,
    ) -> Option<AbsorbingPathWitness> {
        let half = h.k() / 2;
        if blocks.len() == 5 {
            let p = PathWitness {
                blocks: blocks.clone(),
            };
            let interior = used.difference(blocks[0]).difference(blocks[4]);
            if let Some(q) = reroute(h, blocks[0], blocks[4], interior.union(x), ctl) {
                return Some(AbsorbingPathWitness {
                    path: p,
                    rerouted: q,
                });
            }
            return None;
        }
        for cand in subsets_of_set(free.difference(used), half) {
            if !ctl.tick() {
                return None;
            }
            if let Some(last) = blocks.last() {
                if !h.contains_edge(last.union(cand)) {
                    continue;
                }
            }
            blocks.push(cand);
            let found = place(h, x, free, used.union(cand), blocks, ctl);
            blocks.pop();
            if found.is_some() || !ctl.running() {
                return found;
            }
        }
        None
    }
    place(h, x, free, VertexSet::EMPTY, &mut blocks, ctl)
}

/// A 6-block path from `start` to `end` consuming exactly `pool`.
fn reroute(
    h: &Hypergraph,
    start: VertexSet,
    end: VertexSet,
    pool: VertexSet,
    ctl: &mut Ctl,
) -> Option<PathWitness> {
    let mut acc = vec![start];
    if path_dfs(h, start, end, pool, &mut acc, ctl) {
        acc.push(end);
        Some(PathWitness { blocks: acc })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{ExtremalSpec, Variant};
    use crate::hypergraph::binomial;

    fn vs(indices: &[usize]) -> VertexSet {
        VertexSet::from_indices(indices.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_path() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let start = vs(&[0, 1]);
        let end = vs(&[2, 3]);
        let s = find_half_path(&h, start, end, start.union(end), &SolveOptions::default())
            .unwrap();
        let w = s.outcome.witness().unwrap();
        assert!(w.verify(&h));
        assert_eq!(w.blocks.len(), 2);
    }

    #[test]
    fn odd_ends_in_all_odd_graph_fail() {
        // ends odd, union even, but the graph has only odd edges
        let spec = ExtremalSpec::new(Variant::B, 8, 4, 3);
        let h = spec.build().unwrap();
        let start = vs(&[0, 3]); // |∩A| = 1, odd
        let end = vs(&[1, 4]); // odd
        let s = find_half_path(&h, start, end, start.union(end), &SolveOptions::default())
            .unwrap();
        assert!(s.outcome.is_exhausted());
    }

    #[test]
    fn interior_block_path() {
        let h = Hypergraph::complete(9, 6).unwrap();
        let start = vs(&[0, 1, 2]);
        let end = vs(&[3, 4, 5]);
        let allowed = start.union(end).union(vs(&[6, 7, 8]));
        let s = find_half_path(&h, start, end, allowed, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().unwrap();
        assert_eq!(w.blocks.len(), 3);
        assert!(w.verify(&h));
    }

    #[test]
    fn path_shape_errors() {
        let h = Hypergraph::complete(8, 4).unwrap();
        // overlapping ends
        assert!(
            find_half_path(&h, vs(&[0, 1]), vs(&[1, 2]), vs(&[0, 1, 2, 3]), &Default::default())
                .is_err()
        );
        // interior not a multiple of k/2
        assert!(find_half_path(
            &h,
            vs(&[0, 1]),
            vs(&[2, 3]),
            vs(&[0, 1, 2, 3, 4]),
            &Default::default()
        )
        .is_err());
    }

    #[test]
    fn connecting_sets_complete_graph() {
        let h = Hypergraph::complete(12, 4).unwrap();
        let c = count_connecting_sets(&h, vs(&[0, 1]), vs(&[2, 3])).unwrap();
        assert_eq!(c, binomial(8, 6));
    }

    #[test]
    fn connecting_sets_empty_graph() {
        let h = Hypergraph::empty(12, 4).unwrap();
        let c = count_connecting_sets(&h, vs(&[0, 1]), vs(&[2, 3])).unwrap();
        assert_eq!(c, 0);
    }

    #[test]
    fn connecting_sets_symmetric() {
        let spec = ExtremalSpec::new(Variant::Bbar, 12, 4, 6);
        let h = spec.build_forced().unwrap();
        let s = vs(&[6, 7]);
        let t = vs(&[8, 9]);
        let a = count_connecting_sets(&h, s, t).unwrap();
        let b = count_connecting_sets(&h, t, s).unwrap();
        assert_eq!(a, b);
        assert!(a > 0, "even-ended pair must connect in the all-even graph");
    }

    #[test]
    fn absorbing_in_complete_graph() {
        let h = Hypergraph::complete(16, 4).unwrap();
        let s = find_absorbing_path(&h, vs(&[0, 1]), &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().unwrap();
        assert!(w.verify(&h, vs(&[0, 1])));
    }

    #[test]
    fn absorbing_in_empty_graph_fails() {
        let h = Hypergraph::empty(16, 4).unwrap();
        let s = find_absorbing_path(&h, vs(&[0, 1]), &SolveOptions::default()).unwrap();
        assert!(s.outcome.is_exhausted());
    }
}
