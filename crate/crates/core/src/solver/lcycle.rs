//! Reference solver for general Hamilton `ℓ`-cycles over cyclic vertex
//! orders. Only light symmetry breaking (vertex 0 pinned to the first
//! block); intended for small cross-checks. `ℓ = k/2` delegates to the
//! block solver.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

use super::witness::CycleWitness;
use super::{deadline_of, find_hamilton_half_cycle, Ctl, Outcome, Solve, SolveOptions};

struct OrderCtx<'a> {
    h: &'a Hypergraph,
    n: usize,
    k: usize,
    step: usize,
    t: usize,
}

impl OrderCtx<'_> {
    /// Window `i` covers positions `i*step .. i*step + k` cyclically.
    fn window_mask(&self, order: &[usize], i: usize) -> u64 {
        let mut mask = 0u64;
        for j in 0..self.k {
            mask |= 1 << order[(i * self.step + j) % self.n];
        }
        mask
    }

    fn completes_at(&self, pos: usize) -> Option<usize> {
        // non-wrapping window i ends at i*step + k - 1
        if pos + 1 < self.k {
            return None;
        }
        let s = pos + 1 - self.k;
        if s % self.step == 0 && s / self.step < self.t {
            Some(s / self.step)
        } else {
            None
        }
    }

    fn dfs(&self, order: &mut Vec<usize>, used: u64, ctl: &mut Ctl) -> bool {
        let pos = order.len();
        if pos == self.n {
            // wrap-around windows
            for i in 0..self.t {
                if i * self.step + self.k > self.n {
                    let w = crate::hypergraph::VertexSet::from_mask(self.window_mask(order, i));
                    if !self.h.contains_edge(w) {
                        return false;
                    }
                }
            }
            return true;
        }
        // vertex 0 must land inside the first block
        if pos == self.step && used & 1 == 0 {
            return false;
        }
        for v in 0..self.n {
            if used & (1 << v) != 0 {
                continue;
            }
            if !ctl.tick() {
                return false;
            }
            order.push(v);
            let mut ok = true;
            if let Some(i) = self.completes_at(pos) {
                let w = crate::hypergraph::VertexSet::from_mask(self.window_mask(order, i));
                ok = self.h.contains_edge(w);
            }
            if ok && self.dfs(order, used | (1 << v), ctl) {
                return true;
            }
            order.pop();
            if !ctl.running() {
                return false;
            }
        }
        false
    }
}

/// Decides Hamilton `ℓ`-cycle existence for `1 <= ℓ < k`. A Hamilton
/// `ℓ`-cycle has `n/(k-ℓ)` edges, so `k - ℓ` must divide `n`. Degenerate
/// scales (`fewer than three edges, or n <= k`) admit no cycle.
pub fn find_hamilton_l_cycle(
    h: &Hypergraph,
    ell: usize,
    opts: &SolveOptions,
) -> Result<Solve<CycleWitness>> {
    let (n, k) = (h.n(), h.k());
    if ell == 0 || ell >= k {
        return Err(Error::InvalidInput(format!(
            "overlap ℓ = {ell} outside 1..{k}"
        )));
    }
    if n % (k - ell) != 0 {
        return Err(Error::InvalidInput(format!(
            "a Hamilton {ell}-cycle needs k - ℓ = {} to divide n = {n}",
            k - ell
        )));
    }
    if k % 2 == 0 && ell == k / 2 {
        if n >= 3 * (k / 2) {
            return find_hamilton_half_cycle(h, opts);
        }
        // below the block solver's minimum scale nothing can exist
        return Ok(Solve {
            outcome: Outcome::Exhausted,
            nodes_explored: 0,
            wall: std::time::Duration::ZERO,
        });
    }
    let start = Instant::now();
    let step = k - ell;
    let t = n / step;
    if t < 3 || n <= k {
        return Ok(Solve {
            outcome: Outcome::Exhausted,
            nodes_explored: 0,
            wall: start.elapsed(),
        });
    }
    let ctx = OrderCtx {
        h,
        n,
        k,
        step,
        t,
    };
    let mut ctl = Ctl::new(deadline_of(opts), None);
    let mut order = Vec::with_capacity(n);
    let found = ctx.dfs(&mut order, 0, &mut ctl);
    let outcome = if found {
        Outcome::Found(CycleWitness { ell, order })
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexSet;

    #[test]
    fn tight_cycle_in_complete_3_graph() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let s = find_hamilton_l_cycle(&h, 2, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().expect("tight cycle");
        assert!(w.verify(&h));
    }

    #[test]
    fn matching_graph_has_no_loose_cycle() {
        // two disjoint edges only; a 1-cycle on 6 vertices needs 3 edges
        let edges = vec![
            VertexSet::from_indices([0, 1, 2]).unwrap(),
            VertexSet::from_indices([3, 4, 5]).unwrap(),
        ];
        let h = Hypergraph::new(6, 3, edges).unwrap();
        let s = find_hamilton_l_cycle(&h, 1, &SolveOptions::default()).unwrap();
        assert!(s.outcome.is_exhausted());
    }

    #[test]
    fn delegates_to_block_solver_for_half() {
        let spec = crate::extremal::ExtremalSpec::new(crate::extremal::Variant::Bbar, 8, 4, 3);
        let h = spec.build().unwrap();
        let s = find_hamilton_l_cycle(&h, 2, &SolveOptions::default()).unwrap();
        assert!(s.outcome.is_exhausted());
    }

    #[test]
    fn divisibility_is_checked() {
        let h = Hypergraph::complete(7, 3).unwrap();
        assert!(find_hamilton_l_cycle(&h, 1, &SolveOptions::default()).is_err());
        assert!(find_hamilton_l_cycle(&h, 0, &SolveOptions::default()).is_err());
        assert!(find_hamilton_l_cycle(&h, 3, &SolveOptions::default()).is_err());
    }

    #[test]
    fn loose_cycle_found_in_complete_graph() {
        let h = Hypergraph::complete(8, 3).unwrap();
        let s = find_hamilton_l_cycle(&h, 1, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().expect("loose cycle");
        assert!(w.verify(&h));
        assert_eq!(w.t(3), 4);
    }
}
