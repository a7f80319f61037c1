//! Block-sequence search for Hamilton `(k/2)`-cycles.
//!
//! A Hamilton `(k/2)`-cycle is a cyclic sequence of `t = 2n/k` pairwise
//! disjoint `(k/2)`-blocks whose consecutive unions are edges. Searching
//! block sequences instead of vertex orders removes the `(k/2)!` per-block
//! symmetry structurally. Remaining symmetries are broken by fixing the
//! block containing vertex 0 as the first block and requiring the second
//! block to precede the last one in bitmask order.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{subsets_of_set, Hypergraph, VertexSet};

use super::witness::CycleWitness;
use super::{deadline_of, Ctl, Outcome, Prune, PruneMode, Solve, SolveOptions};

/// Block adjacency: `adj[i]` lists the blocks forming an edge with block `i`,
/// ascending by bitmask.
struct BlockCtx {
    masks: Vec<u64>,
    adj: Vec<Vec<u32>>,
    half: usize,
    t: usize,
    full: u64,
}

impl BlockCtx {
    fn build(h: &Hypergraph) -> BlockCtx {
        let half = h.k() / 2;
        let mut masks: Vec<u64> = Vec::new();
        for e in h.edges() {
            for s in subsets_of_set(*e, half) {
                masks.push(s.mask());
            }
        }
        masks.sort_unstable();
        masks.dedup();
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); masks.len()];
        for e in h.edges() {
            for s in subsets_of_set(*e, half) {
                let partner = e.mask() & !s.mask();
                let si = masks.binary_search(&s.mask()).unwrap() as u32;
                let pi = masks.binary_search(&partner).unwrap() as u32;
                adj[si as usize].push(pi);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let n = h.n();
        BlockCtx {
            masks,
            adj,
            half,
            t: n / half,
            full: if n >= 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    fn is_partner(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }
}

/// Forced-bit feasibility for pure parity profiles. `depth` blocks are
/// placed, the last with parity bit `b_last`, the first with `b_first`;
/// `free_a` counts uncovered vertices of `A`.
fn parity_feasible(
    prune: &Prune,
    t: usize,
    depth: usize,
    b_first: bool,
    b_last: bool,
    free_a: usize,
) -> bool {
    let r = t - depth;
    match prune.mode {
        PruneMode::AllOdd => {
            // bits strictly alternate, so the tail is fully determined
            let ones = if b_last { r / 2 } else { r.div_ceil(2) };
            let closing = b_last ^ (r % 2 == 1);
            ones % 2 == free_a % 2 && closing != b_first
        }
        PruneMode::AllEven => {
            let ones = if b_first { r } else { 0 };
            ones % 2 == free_a % 2
        }
    }
}

struct Dfs<'a, 'c> {
    ctx: &'a BlockCtx,
    prune: Option<&'a Prune>,
    ctl: &'a mut Ctl<'c>,
    seq: Vec<u32>,
}

impl<'a, 'c> Dfs<'a, 'c> {
    /// Extends the sequence to length `t`; returns the first completion in
    /// ascending order, which is the lexicographically least one below the
    /// current prefix.
    fn extend(&mut self, used: u64) -> Option<Vec<u32>> {
        let ctx = self.ctx;
        let depth = self.seq.len();
        let last = *self.seq.last().unwrap();
        let first = self.seq[0];
        let closing = depth + 1 == ctx.t;
        // candidate order is ascending because adjacency lists are sorted
        for &cand in &ctx.adj[last as usize] {
            let mask = ctx.masks[cand as usize];
            if mask & used != 0 {
                continue;
            }
            if !self.ctl.tick() {
                return None;
            }
            if closing {
                // orientation tie-break and the wrap-around edge
                if ctx.masks[self.seq[1] as usize] < mask && ctx.is_partner(cand, first) {
                    let mut done = self.seq.clone();
                    done.push(cand);
                    return Some(done);
                }
                continue;
            }
            if let Some(p) = self.prune {
                let free_a = ((ctx.full & !(used | mask)) & p.a_mask).count_ones() as usize;
                let b_first = (ctx.masks[first as usize] & p.a_mask).count_ones() % 2 == 1;
                let b_last = (mask & p.a_mask).count_ones() % 2 == 1;
                if !parity_feasible(p, ctx.t, depth + 1, b_first, b_last, free_a) {
                    continue;
                }
            }
            self.seq.push(cand);
            let found = self.extend(used | mask);
            self.seq.pop();
            if found.is_some() || !self.ctl.running() {
                return found;
            }
        }
        None
    }
}

/// Decides Hamilton `(k/2)`-cycle existence by exhaustive block search.
/// Requires even `k`, `n` divisible by `k/2` and `n >= 3k/2` (a cycle has at
/// least three blocks).
pub fn find_hamilton_half_cycle(
    h: &Hypergraph,
    opts: &SolveOptions,
) -> Result<Solve<CycleWitness>> {
    let (n, k) = (h.n(), h.k());
    if k % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "half-cycle search needs even k, found {k}"
        )));
    }
    let half = k / 2;
    if n % half != 0 {
        return Err(Error::InvalidInput(format!(
            "n = {n} is not a multiple of k/2 = {half}"
        )));
    }
    if n < 3 * half {
        return Err(Error::InvalidInput(format!(
            "n = {n} is below the minimum 3k/2 = {} for a cycle",
            3 * half
        )));
    }

    let start = Instant::now();
    let ctx = BlockCtx::build(h);
    let prune = match &opts.pruning {
        Some(p) => Prune::from_profile(h, p),
        None => None,
    };

    // root cut: with only odd edges, bits must alternate cyclically
    if let Some(p) = &prune {
        if p.mode == PruneMode::AllOdd && ctx.t % 2 == 1 {
            return Ok(Solve {
                outcome: Outcome::Exhausted,
                nodes_explored: 0,
                wall: start.elapsed(),
            });
        }
    }

    let l1_cands: Vec<u32> = (0..ctx.masks.len() as u32)
        .filter(|&i| ctx.masks[i as usize] & 1 != 0)
        .collect();

    let parallel = !opts.deterministic && opts.jobs != 1;
    if !parallel {
        let mut ctl = Ctl::new(deadline_of(opts), None);
        let mut found = None;
        'outer: for &l1 in &l1_cands {
            let mask = ctx.masks[l1 as usize];
            if !ctl.tick() {
                break;
            }
            if let Some(p) = &prune {
                let b1 = (mask & p.a_mask).count_ones() % 2 == 1;
                let free_a = ((ctx.full & !mask) & p.a_mask).count_ones() as usize;
                if !parity_feasible(p, ctx.t, 1, b1, b1, free_a) {
                    continue;
                }
            }
            let mut dfs = Dfs {
                ctx: &ctx,
                prune: prune.as_ref(),
                ctl: &mut ctl,
                seq: vec![l1],
            };
            if let Some(seq) = dfs.extend(mask) {
                found = Some(seq);
                break 'outer;
            }
            if !ctl.running() {
                break;
            }
        }
        let outcome = match found {
            Some(seq) => Outcome::Found(witness_of(&ctx, &seq)),
            None if ctl.budget_hit() => Outcome::OutOfBudget,
            None => Outcome::Exhausted,
        };
        return Ok(Solve {
            outcome,
            nodes_explored: ctl.nodes,
            wall: start.elapsed(),
        });
    }

    // fast mode: split on the (L1, L2) prefix, cancel everyone on first hit
    let mut prefixes: Vec<(u32, u32)> = Vec::new();
    for &l1 in &l1_cands {
        let m1 = ctx.masks[l1 as usize];
        for &l2 in &ctx.adj[l1 as usize] {
            if ctx.masks[l2 as usize] & m1 == 0 {
                prefixes.push((l1, l2));
            }
        }
    }
    let cancel = AtomicBool::new(false);
    let budget_hit = AtomicBool::new(false);
    let total_nodes = AtomicU64::new(0);
    let deadline = deadline_of(opts);
    let run = |&(l1, l2): &(u32, u32)| -> Option<Vec<u32>> {
        let mut ctl = Ctl::new(deadline, Some(&cancel));
        let m1 = ctx.masks[l1 as usize];
        let m2 = ctx.masks[l2 as usize];
        let mut dfs = Dfs {
            ctx: &ctx,
            prune: prune.as_ref(),
            ctl: &mut ctl,
            seq: vec![l1, l2],
        };
        let found = if ctx.t == 2 { None } else { dfs.extend(m1 | m2) };
        if ctl.budget_hit() {
            budget_hit.store(true, Ordering::Relaxed);
        }
        total_nodes.fetch_add(ctl.nodes, Ordering::Relaxed);
        if found.is_some() {
            cancel.store(true, Ordering::Relaxed);
        }
        found
    };
    let result = if opts.jobs == 0 {
        prefixes.par_iter().find_map_any(run)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        pool.install(|| prefixes.par_iter().find_map_any(run))
    };
    let outcome = match result {
        Some(seq) => Outcome::Found(witness_of(&ctx, &seq)),
        None if budget_hit.load(Ordering::Relaxed) => Outcome::OutOfBudget,
        None => Outcome::Exhausted,
    };
    Ok(Solve {
        outcome,
        nodes_explored: total_nodes.load(Ordering::Relaxed),
        wall: start.elapsed(),
    })
}

fn witness_of(ctx: &BlockCtx, seq: &[u32]) -> CycleWitness {
    let blocks: Vec<VertexSet> = seq
        .iter()
        .map(|&i| VertexSet::from_mask(ctx.masks[i as usize]))
        .collect();
    CycleWitness::from_half_blocks(ctx.half * 2, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{ExtremalSpec, Variant};
    use crate::hypergraph::Bipartition;

    #[test]
    fn complete_graph_has_cycle() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let s = find_hamilton_half_cycle(&h, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().expect("cycle in complete graph");
        assert!(w.verify(&h));
        // first block contains vertex 0, orientation tie-break holds
        let blocks = w.blocks(4).unwrap();
        assert!(blocks[0].contains(0));
        assert!(blocks[1] < blocks[3]);
    }

    #[test]
    fn all_even_member_has_none() {
        let spec = ExtremalSpec::new(Variant::Bbar, 8, 4, 3);
        let h = spec.build().unwrap();
        let plain = find_hamilton_half_cycle(&h, &SolveOptions::default()).unwrap();
        assert!(plain.outcome.is_exhausted());
        let pruned = find_hamilton_half_cycle(
            &h,
            &SolveOptions::with_pruning(spec.partition().unwrap()),
        )
        .unwrap();
        assert!(pruned.outcome.is_exhausted());
    }

    #[test]
    fn all_odd_member_with_odd_t_has_none() {
        let spec = ExtremalSpec::new(Variant::B, 10, 4, 5);
        let h = spec.build().unwrap();
        let plain = find_hamilton_half_cycle(&h, &SolveOptions::default()).unwrap();
        assert!(plain.outcome.is_exhausted());
        let pruned = find_hamilton_half_cycle(
            &h,
            &SolveOptions::with_pruning(spec.partition().unwrap()),
        )
        .unwrap();
        assert!(pruned.outcome.is_exhausted());
        assert_eq!(pruned.nodes_explored, 0); // killed at the root
    }

    #[test]
    fn out_of_family_even_a_size_has_cycle() {
        // even |A| voids the all-even obstruction
        let spec = ExtremalSpec::new(Variant::Bbar, 8, 4, 4);
        let h = spec.build_forced().unwrap();
        let s = find_hamilton_half_cycle(&h, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().expect("cycle expected");
        assert!(w.verify(&h));
    }

    #[test]
    fn rejects_bad_shapes() {
        let h = Hypergraph::complete(7, 4).unwrap();
        assert!(find_hamilton_half_cycle(&h, &SolveOptions::default()).is_err());
        let h = Hypergraph::complete(4, 4).unwrap();
        assert!(find_hamilton_half_cycle(&h, &SolveOptions::default()).is_err());
        let h = Hypergraph::complete(9, 3).unwrap();
        assert!(find_hamilton_half_cycle(&h, &SolveOptions::default()).is_err());
    }

    #[test]
    fn fast_parallel_agrees_on_decision() {
        let h = Hypergraph::complete(10, 4).unwrap();
        let fast = SolveOptions {
            deterministic: false,
            jobs: 2,
            ..Default::default()
        };
        let s = find_hamilton_half_cycle(&h, &fast).unwrap();
        assert!(s.outcome.witness().unwrap().verify(&h));

        let spec = ExtremalSpec::new(Variant::Bbar, 12, 4, 5);
        let h = spec.build().unwrap();
        let s = find_hamilton_half_cycle(&h, &fast).unwrap();
        assert!(s.outcome.is_exhausted());
    }

    #[test]
    fn tiny_budget_reports_undecided() {
        let h = Hypergraph::complete(16, 4).unwrap();
        // exhausting a complete graph without finding is impossible, so ask
        // for a witnessless outcome via an empty-ish graph with huge space:
        // remove enough edges that no cycle exists, then give zero time.
        let spec = ExtremalSpec::new(Variant::B, 16, 4, 7);
        let g = spec.build_forced().unwrap();
        let opts = SolveOptions {
            budget: Some(std::time::Duration::from_millis(0)),
            ..Default::default()
        };
        let s = find_hamilton_half_cycle(&g, &opts).unwrap();
        assert!(matches!(
            s.outcome,
            Outcome::OutOfBudget | Outcome::Exhausted
        ));
        let _ = h;
    }

    #[test]
    fn pruning_never_changes_decisions() {
        // mixed-profile graphs take no cuts; pure ones must agree too
        for (n, a) in [(8, 3), (8, 4), (10, 5), (12, 5)] {
            let spec = ExtremalSpec::new(Variant::B, n, 4, a);
            let h = spec.build_forced().unwrap();
            let p = Bipartition::prefix(a, n).unwrap();
            let plain = find_hamilton_half_cycle(&h, &SolveOptions::default()).unwrap();
            let pruned =
                find_hamilton_half_cycle(&h, &SolveOptions::with_pruning(p)).unwrap();
            assert_eq!(
                plain.outcome.is_found(),
                pruned.outcome.is_found(),
                "n={n} a={a}"
            );
            if let (Outcome::Found(w1), Outcome::Found(w2)) = (&plain.outcome, &pruned.outcome)
            {
                assert_eq!(w1, w2);
            }
        }
    }
}
