//! Bitmask-backed vertex sets, hypergraphs, bipartitions and exact degree
//! queries.
//!
//! A [`VertexSet`] is one `u64`, so cardinality and intersection-size queries
//! compile to single instructions. All canonical orders in this crate
//! (edge storage, subset enumeration, "first witness" guarantees) are the
//! ascending numeric order of the underlying bitmask.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard capacity: a vertex set is one machine word.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices in `[0, 64)`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn singleton(v: usize) -> Result<Self> {
        if v >= MAX_VERTICES {
            return Err(Error::Capacity(v + 1));
        }
        Ok(VertexSet(1 << v))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in indices {
            if v >= MAX_VERTICES {
                return Err(Error::Capacity(v + 1));
            }
            mask |= 1 << v;
        }
        Ok(VertexSet(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn insert(self, v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(self.0 | (1 << v))
    }

    pub fn remove(self, v: usize) -> Self {
        if v >= MAX_VERTICES {
            return self;
        }
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Symmetric difference.
    pub fn sym_diff(self, other: Self) -> Self {
        VertexSet(self.0 ^ other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every member index is below `n`.
    pub fn within(self, n: usize) -> bool {
        if n >= MAX_VERTICES {
            return true;
        }
        self.0 >> n == 0
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement_within(self, n: usize) -> Self {
        let universe = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        VertexSet(!self.0 & universe)
    }

    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending member indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        VertexSet::from_indices(indices).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Parity of an intersection count.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Parity {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// An ordered split `(A, B)` of `{0, .., n-1}`; `B` is implied as the
/// complement of `A`. Parity of a set `S` is `|S ∩ A| mod 2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    a: VertexSet,
    n: usize,
}

impl Bipartition {
    pub fn new(a: VertexSet, n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        if !a.within(n) {
            return Err(Error::InvalidInput(format!(
                "partition side {a} not contained in [0, {n})"
            )));
        }
        Ok(Bipartition { a, n })
    }

    /// `A = {0, .., a_size-1}`.
    pub fn prefix(a_size: usize, n: usize) -> Result<Self> {
        if a_size > n {
            return Err(Error::InvalidInput(format!(
                "|A| = {a_size} exceeds n = {n}"
            )));
        }
        let mask = if a_size == 0 { 0 } else { (1u64 << a_size) - 1 };
        Bipartition::new(VertexSet::from_mask(mask), n)
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.a.complement_within(self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a_size(&self) -> usize {
        self.a.len()
    }

    /// `odd` iff `|s ∩ A|` is odd.
    pub fn parity_of(&self, s: VertexSet) -> Parity {
        Parity::of(s.intersection(self.a).len())
    }

    pub fn is_odd(&self, s: VertexSet) -> bool {
        self.parity_of(s) == Parity::Odd
    }
}

/// Enumerates all `k`-subsets of `{0, .., n-1}` in ascending bitmask order
/// (Gosper's hack).
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut cur = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let mask = cur?;
        if k > 0 && (n < 64 && mask >= limit) {
            cur = None;
            return None;
        }
        // advance
        cur = if mask == 0 {
            None
        } else {
            let lsb = mask & mask.wrapping_neg();
            let ripple = mask.wrapping_add(lsb);
            if ripple == 0 {
                None
            } else {
                let ones = ((mask ^ ripple) >> 2) / lsb;
                let next = ripple | ones;
                if n < 64 && next >= limit {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(VertexSet::from_mask(mask))
    })
}

/// Enumerates all `k`-subsets of an arbitrary base set, ascending by bitmask.
pub fn subsets_of_set(base: VertexSet, k: usize) -> impl Iterator<Item = VertexSet> {
    let positions: Vec<usize> = base.iter().collect();
    let m = positions.len();
    subsets_of_size(m, k).map(move |idx| {
        let mut mask = 0u64;
        for i in idx.iter() {
            mask |= 1 << positions[i];
        }
        VertexSet::from_mask(mask)
    })
}

/// Result of an exhaustive minimum `d`-degree computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub d: usize,
    pub min_degree: u64,
    /// First minimiser in ascending bitmask order.
    pub argmin_set: VertexSet,
}

/// A `k`-uniform hypergraph on `{0, .., n-1}` with a deduplicated edge list
/// stored in ascending bitmask order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, mut edges: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        if k < 2 {
            return Err(Error::InvalidInput(format!(
                "uniformity k = {k} must be at least 2"
            )));
        }
        for e in &edges {
            if e.len() != k {
                return Err(Error::InvalidInput(format!(
                    "edge {e} has {} vertices, expected {k}",
                    e.len()
                )));
            }
            if !e.within(n) {
                return Err(Error::InvalidInput(format!(
                    "edge {e} not contained in [0, {n})"
                )));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, k, edges })
    }

    /// All `k`-subsets of `[0, n)`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let edges: Vec<VertexSet> = subsets_of_size(n, k).collect();
        Hypergraph::new(n, k, edges)
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Hypergraph::new(n, k, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: VertexSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// A copy with `e` added. Errors if `e` is not a valid edge shape.
    pub fn including(&self, e: VertexSet) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(e);
        Hypergraph::new(self.n, self.k, edges)
    }

    /// A copy with `e` removed (no-op if absent).
    pub fn excluding(&self, e: VertexSet) -> Self {
        let edges = self.edges.iter().copied().filter(|&x| x != e).collect();
        Hypergraph {
            n: self.n,
            k: self.k,
            edges,
        }
    }

    /// Number of edges containing `s`. `|s| = 0` is allowed and returns the
    /// edge count; `|s| > k` is an invalid query.
    pub fn degree(&self, s: VertexSet) -> Result<u64> {
        if s.len() > self.k {
            return Err(Error::InvalidQuery(format!(
                "degree of a {}-set in a {}-uniform hypergraph",
                s.len(),
                self.k
            )));
        }
        if !s.within(self.n) {
            return Err(Error::InvalidQuery(format!(
                "set {s} not contained in [0, {})",
                self.n
            )));
        }
        Ok(self.degree_unchecked(s))
    }

    fn degree_unchecked(&self, s: VertexSet) -> u64 {
        let missing = self.k - s.len();
        let free = self.n - s.len();
        // Either scan the edge list or enumerate completions, whichever is
        // smaller.
        if let Some(completions) = binomial_checked(free, missing) {
            if completions <= self.edges.len() as u64 {
                let complement = s.complement_within(self.n);
                return subsets_of_set(complement, missing)
                    .filter(|c| self.contains_edge(s.union(*c)))
                    .count() as u64;
            }
        }
        self.edges.iter().filter(|e| s.is_subset_of(**e)).count() as u64
    }

    /// Exhaustive minimum `d`-degree over all `C(n, d)` vertex sets, with the
    /// first minimiser in ascending bitmask order. Requires `1 <= d <= k-1`.
    pub fn min_d_degree(&self, d: usize) -> Result<DegreeProfile> {
        if d == 0 || d >= self.k {
            return Err(Error::InvalidQuery(format!(
                "d = {d} outside 1..={} for minimum d-degree",
                self.k - 1
            )));
        }
        if d > self.n {
            return Err(Error::InvalidQuery(format!(
                "no {d}-subsets of a {}-vertex set",
                self.n
            )));
        }
        let mut best: Option<(u64, VertexSet)> = None;
        for s in subsets_of_size(self.n, d) {
            let deg = self.degree_unchecked(s);
            match best {
                Some((min, _)) if deg >= min => {}
                _ => best = Some((deg, s)),
            }
            if let Some((0, _)) = best {
                // 0 at the first attaining set is final: later sets cannot be
                // smaller and argmin is the first minimiser anyway.
                break;
            }
        }
        let (min_degree, argmin_set) = best.expect("d <= n guarantees at least one subset");
        Ok(DegreeProfile {
            d,
            min_degree,
            argmin_set,
        })
    }
}

/// Size of the symmetric difference of the edge sets. Both hypergraphs must
/// share `(n, k)`.
pub fn edit_distance(h1: &Hypergraph, h2: &Hypergraph) -> Result<u64> {
    if h1.n != h2.n || h1.k != h2.k {
        return Err(Error::IncompatibleHypergraphs {
            n1: h1.n,
            k1: h1.k,
            n2: h2.n,
            k2: h2.k,
        });
    }
    let (mut i, mut j, mut diff) = (0usize, 0usize, 0u64);
    let (a, b) = (&h1.edges, &h2.edges);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                diff += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                diff += 1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    diff += (a.len() - i) as u64 + (b.len() - j) as u64;
    Ok(diff)
}

/// `C(n, k)` as `u64`, `None` on overflow.
pub fn binomial_checked(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, k)` for small arguments; panics on overflow.
pub fn binomial(n: usize, k: usize) -> u64 {
    binomial_checked(n, k).expect("binomial overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(indices: &[usize]) -> VertexSet {
        VertexSet::from_indices(indices.iter().copied()).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let s = vs(&[0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3));
        assert!(!s.contains(1));
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.to_string(), "{0,3,5}");
        assert_eq!(s.complement_within(6), vs(&[1, 2, 4]));
        assert!(vs(&[0, 1]).is_subset_of(s.union(vs(&[1]))));
        assert!(VertexSet::from_indices([64]).is_err());
    }

    #[test]
    fn gosper_enumeration_count_and_order() {
        let all: Vec<VertexSet> = subsets_of_size(6, 3).collect();
        assert_eq!(all.len() as u64, binomial(6, 3));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subsets_of_size(5, 0).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(4, 4).count(), 1);
    }

    #[test]
    fn subsets_of_set_maps_positions() {
        let base = vs(&[1, 4, 7]);
        let pairs: Vec<VertexSet> = subsets_of_set(base, 2).collect();
        assert_eq!(pairs, vec![vs(&[1, 4]), vs(&[1, 7]), vs(&[4, 7])]);
    }

    #[test]
    fn degree_complete_graph() {
        let h = Hypergraph::complete(6, 4).unwrap();
        assert_eq!(h.degree(vs(&[0, 1])).unwrap(), 6); // C(4,2)
        assert_eq!(h.degree(VertexSet::EMPTY).unwrap(), h.edge_count() as u64);
    }

    #[test]
    fn degree_empty_graph() {
        let h = Hypergraph::empty(8, 4).unwrap();
        assert_eq!(h.degree(vs(&[2, 5])).unwrap(), 0);
    }

    #[test]
    fn degree_bbar_odd_query_set() {
        // All-even 4-graph on 8 vertices with |A| = 3: the set A itself has
        // degree 0 because every extension meets A in exactly 3 vertices.
        let p = Bipartition::prefix(3, 8).unwrap();
        let edges: Vec<VertexSet> = subsets_of_size(8, 4)
            .filter(|e| p.parity_of(*e) == Parity::Even)
            .collect();
        let h = Hypergraph::new(8, 4, edges).unwrap();
        // independent brute check over the 5 single-vertex extensions
        let brute = (3..8)
            .filter(|&v| h.contains_edge(p.a().insert(v)))
            .count();
        assert_eq!(brute, 0);
        assert_eq!(h.degree(p.a()).unwrap(), 0);
    }

    #[test]
    fn degree_rejects_oversized_query() {
        let h = Hypergraph::complete(6, 3).unwrap();
        assert!(matches!(
            h.degree(vs(&[0, 1, 2, 3])),
            Err(Error::InvalidQuery(_))
        ));
    }

    #[test]
    fn min_degree_complete() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let prof = h.min_d_degree(3).unwrap();
        assert_eq!(prof.min_degree, 5); // C(5,1)
        assert_eq!(prof.argmin_set, vs(&[0, 1, 2]));
        assert!(h.min_d_degree(0).is_err());
        assert!(h.min_d_degree(4).is_err());
    }

    fn parity_graph(n: usize, k: usize, a_size: usize, want: Parity) -> Hypergraph {
        let p = Bipartition::prefix(a_size, n).unwrap();
        let edges = subsets_of_size(n, k)
            .filter(|e| p.parity_of(*e) == want)
            .collect();
        Hypergraph::new(n, k, edges).unwrap()
    }

    #[test]
    fn min_codegree_matches_part_formulas() {
        // all-even on 15 vertices, |A| = 7: min{7,8} - 6 + 1 = 2
        let bbar = parity_graph(15, 6, 7, Parity::Even);
        assert_eq!(bbar.min_d_degree(5).unwrap().min_degree, 2);
        // all-odd: min{7,8} - 6 + 2 = 3
        let b = parity_graph(15, 6, 7, Parity::Odd);
        assert_eq!(b.min_d_degree(5).unwrap().min_degree, 3);
    }

    #[test]
    fn set_parity_examples() {
        let p = Bipartition::prefix(3, 8).unwrap();
        assert_eq!(p.parity_of(vs(&[0, 3])), Parity::Odd);
        assert_eq!(p.parity_of(vs(&[0, 1])), Parity::Even);
        let empty_side = Bipartition::prefix(0, 8).unwrap();
        assert_eq!(empty_side.parity_of(vs(&[4, 5, 6])), Parity::Even);
    }

    #[test]
    fn edit_distance_examples() {
        let h = Hypergraph::complete(6, 3).unwrap();
        assert_eq!(edit_distance(&h, &h).unwrap(), 0);
        let h2 = h.excluding(vs(&[0, 1, 2]));
        assert_eq!(edit_distance(&h, &h2).unwrap(), 1);

        let b = parity_graph(8, 4, 4, Parity::Odd);
        let bbar = parity_graph(8, 4, 4, Parity::Even);
        // every 4-set lies in exactly one of the two
        assert_eq!(
            b.edge_count() as u64 + bbar.edge_count() as u64,
            binomial(8, 4)
        );
        assert_eq!(edit_distance(&b, &bbar).unwrap(), binomial(8, 4));
    }

    #[test]
    fn edit_distance_rejects_mismatch() {
        let a = Hypergraph::complete(6, 3).unwrap();
        let b = Hypergraph::complete(7, 3).unwrap();
        assert!(matches!(
            edit_distance(&a, &b),
            Err(Error::IncompatibleHypergraphs { .. })
        ));
    }

    #[test]
    fn vertex_degree_sum_is_k_times_edges() {
        let h = parity_graph(9, 4, 4, Parity::Odd);
        let sum: u64 = (0..9)
            .map(|v| h.degree(VertexSet::singleton(v).unwrap()).unwrap())
            .sum();
        assert_eq!(sum, 4 * h.edge_count() as u64);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let e = vs(&[0, 1, 2]);
        let h = Hypergraph::new(5, 3, vec![e, e, vs(&[1, 2, 3])]).unwrap();
        assert_eq!(h.edge_count(), 2);
    }
}
