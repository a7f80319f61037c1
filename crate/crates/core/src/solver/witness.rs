//! Verified certificates of found structures. Every verifier re-checks the
//! full set of invariants from scratch against the hypergraph.

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, VertexSet};

/// A Hamilton `ℓ`-cycle as a cyclic vertex order. Edges are the windows of
/// `k` consecutive vertices starting at multiples of `k - ℓ`, so consecutive
/// edges share exactly `ℓ` vertices. For `ℓ = k/2` the order is the
/// concatenation of the cycle's disjoint `(k/2)`-blocks, each listed
/// ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub ell: usize,
    pub order: Vec<usize>,
}

impl CycleWitness {
    pub fn from_half_blocks(k: usize, blocks: &[VertexSet]) -> Self {
        let mut order = Vec::with_capacity(blocks.len() * (k / 2));
        for b in blocks {
            order.extend(b.iter());
        }
        CycleWitness { ell: k / 2, order }
    }

    /// Number of edges (= number of blocks of size `k - ℓ`).
    pub fn t(&self, k: usize) -> usize {
        let step = k - self.ell;
        if step == 0 || self.order.len() % step != 0 {
            0
        } else {
            self.order.len() / step
        }
    }

    /// The `(k - ℓ)`-blocks in cyclic order, or `None` if the order length
    /// is not divisible.
    pub fn blocks(&self, k: usize) -> Option<Vec<VertexSet>> {
        let step = k.checked_sub(self.ell).filter(|&s| s > 0)?;
        if self.order.len() % step != 0 {
            return None;
        }
        self.order
            .chunks(step)
            .map(|c| VertexSet::from_indices(c.iter().copied()).ok())
            .collect()
    }

    /// The `t` edges of the cycle as vertex sets.
    pub fn edge_windows(&self, k: usize) -> Vec<VertexSet> {
        let n = self.order.len();
        let step = k - self.ell;
        let t = n / step;
        (0..t)
            .map(|i| {
                let mut mask = 0u64;
                for j in 0..k {
                    mask |= 1 << self.order[(i * step + j) % n];
                }
                VertexSet::from_mask(mask)
            })
            .collect()
    }

    pub fn verify(&self, h: &Hypergraph) -> bool {
        let (n, k) = (h.n(), h.k());
        if self.ell == 0 || self.ell >= k || self.order.len() != n {
            return false;
        }
        let step = k - self.ell;
        if n % step != 0 {
            return false;
        }
        let t = n / step;
        if t < 3 || n < k {
            return false;
        }
        let mut seen = 0u64;
        for &v in &self.order {
            if v >= n || seen & (1 << v) != 0 {
                return false;
            }
            seen |= 1 << v;
        }
        let windows = self.edge_windows(k);
        for (i, w) in windows.iter().enumerate() {
            if w.len() != k || !h.contains_edge(*w) {
                return false;
            }
            let next = windows[(i + 1) % t];
            if w.intersection(next).len() != self.ell {
                return false;
            }
            if windows[..i].contains(w) {
                return false;
            }
        }
        true
    }

    /// For `ℓ = k/2` and even `t`, the edges at even and odd window positions
    /// form two disjoint perfect matchings.
    pub fn split_into_matchings(&self, k: usize) -> Option<(MatchingWitness, MatchingWitness)> {
        if self.ell != k / 2 || k % 2 != 0 {
            return None;
        }
        let t = self.t(k);
        if t == 0 || t % 2 != 0 {
            return None;
        }
        let windows = self.edge_windows(k);
        let first = windows.iter().copied().step_by(2).collect();
        let second = windows.iter().copied().skip(1).step_by(2).collect();
        Some((
            MatchingWitness { edges: first },
            MatchingWitness { edges: second },
        ))
    }
}

/// A `(k/2)`-path: pairwise disjoint blocks whose consecutive unions are
/// edges. The two outer blocks are the ends. At least two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub blocks: Vec<VertexSet>,
}

impl PathWitness {
    pub fn ends(&self) -> Option<(VertexSet, VertexSet)> {
        match (self.blocks.first(), self.blocks.last()) {
            (Some(a), Some(b)) if self.blocks.len() >= 2 => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.blocks
            .iter()
            .fold(VertexSet::EMPTY, |acc, b| acc.union(*b))
    }

    pub fn verify(&self, h: &Hypergraph) -> bool {
        let k = h.k();
        if k % 2 != 0 || self.blocks.len() < 2 {
            return false;
        }
        let half = k / 2;
        let mut used = VertexSet::EMPTY;
        for b in &self.blocks {
            if b.len() != half || !b.within(h.n()) || !used.is_disjoint(*b) {
                return false;
            }
            used = used.union(*b);
        }
        self.blocks
            .windows(2)
            .all(|w| h.contains_edge(w[0].union(w[1])))
    }
}

/// A perfect matching: pairwise disjoint edges covering the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingWitness {
    pub edges: Vec<VertexSet>,
}

impl MatchingWitness {
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let (n, k) = (h.n(), h.k());
        if n % k != 0 || self.edges.len() != n / k {
            return false;
        }
        let mut covered = VertexSet::EMPTY;
        for e in &self.edges {
            if !h.contains_edge(*e) || !covered.is_disjoint(*e) {
                return false;
            }
            covered = covered.union(*e);
        }
        covered == VertexSet::EMPTY.complement_within(n)
    }
}

/// An absorbing configuration for a `(k/2)`-set `x`: a path `P` on `5k/2`
/// vertices avoiding `x`, together with a re-routed path `Q` on
/// `V(P) ∪ x` that has exactly the same ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorbingPathWitness {
    pub path: PathWitness,
    pub rerouted: PathWitness,
}

impl AbsorbingPathWitness {
    pub fn verify(&self, h: &Hypergraph, x: VertexSet) -> bool {
        let k = h.k();
        if k % 2 != 0 || x.len() != k / 2 || !x.within(h.n()) {
            return false;
        }
        if self.path.blocks.len() != 5 || self.rerouted.blocks.len() != 6 {
            return false;
        }
        if !self.path.verify(h) || !self.rerouted.verify(h) {
            return false;
        }
        let pv = self.path.vertices();
        if !pv.is_disjoint(x) || self.rerouted.vertices() != pv.union(x) {
            return false;
        }
        let (ps, pe) = self.path.ends().expect("5 blocks");
        let (qs, qe) = self.rerouted.ends().expect("6 blocks");
        (ps, pe) == (qs, qe) || (ps, pe) == (qe, qs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(indices: &[usize]) -> VertexSet {
        VertexSet::from_indices(indices.iter().copied()).unwrap()
    }

    #[test]
    fn half_cycle_verifies_in_complete_graph() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let blocks = [vs(&[0, 1]), vs(&[2, 3]), vs(&[4, 5]), vs(&[6, 7])];
        let w = CycleWitness::from_half_blocks(4, &blocks);
        assert!(w.verify(&h));
        let (m1, m2) = w.split_into_matchings(4).unwrap();
        assert!(m1.verify(&h));
        assert!(m2.verify(&h));
        assert!(m1.edges.iter().all(|e| !m2.edges.contains(e)));
    }

    #[test]
    fn tampered_cycle_fails() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let blocks = [vs(&[0, 1]), vs(&[2, 3]), vs(&[4, 5]), vs(&[6, 7])];
        let mut w = CycleWitness::from_half_blocks(4, &blocks);
        w.order[0] = 2; // duplicate vertex
        assert!(!w.verify(&h));
    }

    #[test]
    fn cycle_missing_edge_fails() {
        let h = Hypergraph::complete(8, 4)
            .unwrap()
            .excluding(vs(&[0, 1, 2, 3]));
        let blocks = [vs(&[0, 1]), vs(&[2, 3]), vs(&[4, 5]), vs(&[6, 7])];
        let w = CycleWitness::from_half_blocks(4, &blocks);
        assert!(!w.verify(&h));
    }

    #[test]
    fn two_block_cycle_rejected() {
        let h = Hypergraph::complete(4, 4).unwrap();
        let w = CycleWitness {
            ell: 2,
            order: vec![0, 1, 2, 3],
        };
        assert!(!w.verify(&h));
    }

    #[test]
    fn path_and_matching_verify() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let p = PathWitness {
            blocks: vec![vs(&[0, 1]), vs(&[2, 3]), vs(&[4, 5])],
        };
        assert!(p.verify(&h));
        let single = PathWitness {
            blocks: vec![vs(&[0, 1])],
        };
        assert!(!single.verify(&h));
        let m = MatchingWitness {
            edges: vec![vs(&[0, 1, 2, 3]), vs(&[4, 5, 6, 7])],
        };
        assert!(m.verify(&h));
        let incomplete = MatchingWitness {
            edges: vec![vs(&[0, 1, 2, 3])],
        };
        assert!(!incomplete.verify(&h));
    }

    #[test]
    fn tight_cycle_witness() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let w = CycleWitness {
            ell: 2,
            order: vec![0, 1, 2, 3, 4, 5],
        };
        assert!(w.verify(&h));
    }
}
