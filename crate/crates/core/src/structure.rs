//! Closeness to the extremal parity families, good/bad/medium set
//! classification, and witness finders for forbidden-intersection premises.
//!
//! All density thresholds (`α`, `ε`) are exact rationals and every
//! comparison cross-multiplies in arbitrary precision, so classifications
//! never depend on floating-point rounding.

use num_bigint::BigUint;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::Variant;
use crate::hypergraph::{
    binomial, subsets_of_size, Bipartition, Hypergraph, Parity, VertexSet,
};

/// A non-negative exact rational threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alpha {
    pub num: u64,
    pub den: u64,
}

impl Alpha {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput("rational with zero denominator".into()));
        }
        Ok(Alpha { num, den })
    }

    pub fn zero() -> Self {
        Alpha { num: 0, den: 1 }
    }

    /// Exact test `count <= (num/den) * n^pow` by cross multiplication.
    pub fn admits(&self, count: u64, n: usize, pow: usize) -> bool {
        let lhs = BigUint::from(count) * BigUint::from(self.den);
        let rhs = BigUint::from(self.num) * BigUint::from(n).pow(pow as u32);
        lhs <= rhs
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num: u64 = num
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid rational {s:?}")))?;
        let den: u64 = den
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid rational {s:?}")))?;
        Alpha::new(num, den)
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetClass {
    Good,
    Bad,
    /// Both deficiency counts fall below the threshold; the definitions
    /// overlap, so this is reported explicitly.
    GoodAndBad,
    Medium,
}

/// Classification of a vertex set against a reference hypergraph:
/// `missing = deg_{ref \ h}(S)`, `present = deg_{ref ∩ h}(S)`. Good means
/// few reference edges are missing, bad means few are present, medium means
/// neither.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: SetClass,
    pub alpha: Alpha,
    pub missing: u64,
    pub present: u64,
}

pub fn classify(
    s: VertexSet,
    h: &Hypergraph,
    reference: &Hypergraph,
    alpha: Alpha,
) -> Result<Classification> {
    if h.n() != reference.n() || h.k() != reference.k() {
        return Err(Error::IncompatibleHypergraphs {
            n1: h.n(),
            k1: h.k(),
            n2: reference.n(),
            k2: reference.k(),
        });
    }
    if s.len() >= h.k() {
        return Err(Error::InvalidQuery(format!(
            "classification needs |S| < k, found |S| = {}",
            s.len()
        )));
    }
    if !s.within(h.n()) {
        return Err(Error::InvalidQuery(format!(
            "set {s} not contained in [0, {})",
            h.n()
        )));
    }
    let mut missing = 0u64;
    let mut present = 0u64;
    for e in reference.edges() {
        if s.is_subset_of(*e) {
            if h.contains_edge(*e) {
                present += 1;
            } else {
                missing += 1;
            }
        }
    }
    let pow = h.k() - s.len();
    let good = alpha.admits(missing, h.n(), pow);
    let bad = alpha.admits(present, h.n(), pow);
    let class = match (good, bad) {
        (true, true) => SetClass::GoodAndBad,
        (true, false) => SetClass::Good,
        (false, true) => SetClass::Bad,
        (false, false) => SetClass::Medium,
    };
    Ok(Classification {
        class,
        alpha,
        missing,
        present,
    })
}

/// True when `deg_{ref \ h}(s) <= alpha * n^(k-|s|)`.
pub fn is_alpha_good(
    s: VertexSet,
    h: &Hypergraph,
    reference: &Hypergraph,
    alpha: Alpha,
) -> Result<bool> {
    let c = classify(s, h, reference, alpha)?;
    Ok(matches!(c.class, SetClass::Good | SetClass::GoodAndBad))
}

/// The all-odd or all-even `k`-graph on an arbitrary bipartition.
pub fn parity_graph(p: &Bipartition, k: usize, want: Parity) -> Result<Hypergraph> {
    let edges = subsets_of_size(p.n(), k)
        .filter(|e| p.parity_of(*e) == want)
        .collect();
    Hypergraph::new(p.n(), k, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosenessMode {
    /// Exhaustive minimum over bipartitions; capped at n = 20 balanced
    /// (n = 16 when searching all part sizes).
    Exact,
    /// Majority-move start plus single-vertex hill climbing; an upper bound.
    LocalSearch,
}

/// Minimum edit distance from `h` to a parity variant over the searched
/// partition space. `epsilon_equivalent` is the exact rational
/// `distance / n^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closeness {
    pub distance: u64,
    pub best_partition: Bipartition,
    pub variant: Variant,
    pub epsilon_equivalent: String,
    /// False for local-search results, which only bound from above.
    pub exact: bool,
}

fn variant_parity(variant: Variant) -> Result<Parity> {
    match variant {
        Variant::B => Ok(Parity::Odd),
        Variant::Bbar => Ok(Parity::Even),
        other => Err(Error::InvalidInput(format!(
            "closeness targets the b/bbar variants, found {}",
            other.name()
        ))),
    }
}

/// `|E(h) Δ E_variant(A)|` for one partition, in O(|E|) after a closed-form
/// count of the variant's edges.
fn distance_at(h: &Hypergraph, a: VertexSet, want: Parity) -> u64 {
    let n = h.n();
    let k = h.k();
    let s = a.len();
    let mut variant_edges = 0u64;
    for i in 0..=k.min(s) {
        if k - i > n - s {
            continue;
        }
        if Parity::of(i) == want {
            variant_edges += binomial(s, i) * binomial(n - s, k - i);
        }
    }
    let mut matches = 0u64;
    let a_mask = a.mask();
    for e in h.edges() {
        let inter = (e.mask() & a_mask).count_ones() as usize;
        if Parity::of(inter) == want {
            matches += 1;
        }
    }
    h.edge_count() as u64 + variant_edges - 2 * matches
}

fn reduced_fraction(num: u64, n: usize, k: usize) -> String {
    let num = BigUint::from(num);
    let den = BigUint::from(n).pow(k as u32);
    let g = num_gcd(&num, &den);
    format!("{}/{}", &num / &g, &den / &g)
}

fn num_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    use num_bigint::BigUint as B;
    let (mut a, mut b) = (a.clone(), b.clone());
    let zero = B::from(0u32);
    while b != zero {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a == zero {
        B::from(1u32)
    } else {
        a
    }
}

/// Minimum symmetric difference to the variant. Exact mode enumerates
/// balanced bipartitions (`|A| = ⌊n/2⌋`), matching the family's balanced
/// reduction; `all_sizes` widens the search to every `|A|` for exploration.
/// Local search starts from the prefix partition, moves every vertex with a
/// minority-edge majority, then hill-climbs single-vertex moves.
pub fn closeness(
    h: &Hypergraph,
    variant: Variant,
    mode: ClosenessMode,
    all_sizes: bool,
) -> Result<Closeness> {
    let want = variant_parity(variant)?;
    let n = h.n();
    match mode {
        ClosenessMode::Exact => {
            let cap = if all_sizes { 16 } else { 20 };
            if n > cap {
                return Err(Error::Budget(format!(
                    "exact closeness enumeration capped at n = {cap}, found n = {n}"
                )));
            }
            let mut best: Option<(u64, VertexSet)> = None;
            let mut consider = |a: VertexSet| {
                let d = distance_at(h, a, want);
                match best {
                    Some((bd, _)) if d >= bd => {}
                    _ => best = Some((d, a)),
                }
            };
            if all_sizes {
                for s in 0..=n {
                    for a in subsets_of_size(n, s) {
                        consider(a);
                    }
                }
            } else {
                for a in subsets_of_size(n, n / 2) {
                    consider(a);
                }
            }
            let (distance, a) = best.expect("at least one partition");
            Ok(Closeness {
                distance,
                best_partition: Bipartition::new(a, n)?,
                variant,
                epsilon_equivalent: reduced_fraction(distance, n, h.k()),
                exact: true,
            })
        }
        ClosenessMode::LocalSearch => {
            let mut a = Bipartition::prefix(n / 2, n)?.a();
            // majority-move pass: flip every vertex lying in more
            // minority than majority edges
            let p = Bipartition::new(a, n)?;
            let mut movers = VertexSet::EMPTY;
            for v in 0..n {
                let mut maj = 0u64;
                let mut min = 0u64;
                for e in h.edges() {
                    if e.contains(v) {
                        if p.parity_of(*e) == want {
                            maj += 1;
                        } else {
                            min += 1;
                        }
                    }
                }
                if min > maj {
                    movers = movers.insert(v);
                }
            }
            a = a.sym_diff(movers);
            let mut dist = distance_at(h, a, want);
            // single-vertex hill climbing
            loop {
                let mut improved = None;
                for v in 0..n {
                    let cand = a.sym_diff(VertexSet::singleton(v)?);
                    let d = distance_at(h, cand, want);
                    if d < dist {
                        dist = d;
                        improved = Some(cand);
                    }
                }
                match improved {
                    Some(next) => a = next,
                    None => break,
                }
            }
            Ok(Closeness {
                distance: dist,
                best_partition: Bipartition::new(a, n)?,
                variant,
                epsilon_equivalent: reduced_fraction(dist, n, h.k()),
                exact: false,
            })
        }
    }
}

/// True iff no two sets of the family intersect in 0 or `k/2` vertices.
/// All sets are expected to have size `k`.
pub fn forbidden_intersection_ok(family: &[VertexSet], k: usize) -> bool {
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let inter = a.intersection(*b).len();
            if inter == 0 || inter == k / 2 {
                return false;
            }
        }
    }
    true
}

/// Fixed-width bitset over the candidate universe of the clique search.
#[derive(Clone)]
struct WordSet(Vec<u64>);

impl WordSet {
    fn empty(n: usize) -> Self {
        WordSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        for (wi, w) in self.0.iter().enumerate() {
            if *w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn intersect(&self, other: &WordSet) -> WordSet {
        WordSet(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a & b)
                .collect(),
        )
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }
}

/// Maximum family of `k`-sets of `[0, n)` avoiding pairwise intersections
/// of size 0 and `k/2`, found as a maximum clique in the compatibility
/// graph. Deterministic: the first maximum in ascending order is returned.
/// `max_nodes` bounds the branch-and-bound size.
pub fn max_forbidden_intersection_family(
    n: usize,
    k: usize,
    max_nodes: Option<u64>,
) -> Result<(u64, Vec<VertexSet>)> {
    if k == 0 || n > crate::MAX_VERTICES {
        return Err(Error::InvalidInput(format!("bad family shape n={n} k={k}")));
    }
    let sets: Vec<VertexSet> = subsets_of_size(n, k).collect();
    let m = sets.len();
    if m == 0 {
        return Ok((0, Vec::new()));
    }
    let mut adj: Vec<WordSet> = vec![WordSet::empty(m); m];
    for i in 0..m {
        for j in i + 1..m {
            let inter = sets[i].intersection(sets[j]).len();
            if inter != 0 && inter != k / 2 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }

    struct Bnb<'a> {
        adj: &'a [WordSet],
        best: Vec<usize>,
        nodes: u64,
        max_nodes: Option<u64>,
    }

    impl Bnb<'_> {
        fn expand(&mut self, cur: &mut Vec<usize>, cand: &WordSet) -> Result<()> {
            self.nodes += 1;
            if let Some(cap) = self.max_nodes {
                if self.nodes > cap {
                    return Err(Error::Budget(format!(
                        "clique search exceeded {cap} nodes"
                    )));
                }
            }
            if cand.is_empty() {
                if cur.len() > self.best.len() {
                    self.best = cur.clone();
                }
                return Ok(());
            }
            if cur.len() + cand.count() <= self.best.len() {
                return Ok(());
            }
            let mut cand = cand.clone();
            while let Some(v) = cand.first() {
                if cur.len() + cand.count() <= self.best.len() {
                    return Ok(());
                }
                cand.remove(v);
                cur.push(v);
                self.expand(cur, &cand.intersect(&self.adj[v]))?;
                cur.pop();
            }
            Ok(())
        }
    }

    let mut all = WordSet::empty(m);
    for i in 0..m {
        all.insert(i);
    }
    let mut bnb = Bnb {
        adj: &adj,
        best: Vec::new(),
        nodes: 0,
        max_nodes,
    };
    let mut cur = Vec::new();
    bnb.expand(&mut cur, &all)?;
    let family: Vec<VertexSet> = bnb.best.iter().map(|&i| sets[i]).collect();
    Ok((family.len() as u64, family))
}

/// Three edges with `e1 ∩ (e2 ∪ e3) = ∅` and `|e2 ∩ e3| ∈ {0, k/2}`, or
/// `None` after exhausting all triples. The first triple in ascending
/// `(e1, e2, e3)` order (with `e2 < e3`) is returned.
pub fn find_three_edges(h: &Hypergraph) -> Option<(VertexSet, VertexSet, VertexSet)> {
    let half = h.k() / 2;
    let edges = h.edges();
    for (i, &e1) in edges.iter().enumerate() {
        let rest: Vec<VertexSet> = edges
            .iter()
            .enumerate()
            .filter(|(j, e)| *j != i && e.is_disjoint(e1))
            .map(|(_, e)| *e)
            .collect();
        for (x, &e2) in rest.iter().enumerate() {
            for &e3 in &rest[x + 1..] {
                let inter = e2.intersection(e3).len();
                if inter == 0 || inter == half {
                    return Some((e1, e2, e3));
                }
            }
        }
    }
    None
}

/// Two edges of the requested parity class whose intersection has size 0 or
/// `k/2`, or `None`. First pair in ascending order.
pub fn find_bridge_pair(
    h: &Hypergraph,
    p: &Bipartition,
    side: Parity,
) -> Option<(VertexSet, VertexSet)> {
    let half = h.k() / 2;
    let pool: Vec<VertexSet> = h
        .edges()
        .iter()
        .copied()
        .filter(|e| p.parity_of(*e) == side)
        .collect();
    for (i, &e1) in pool.iter().enumerate() {
        for &e2 in &pool[i + 1..] {
            let inter = e1.intersection(e2).len();
            if inter == 0 || inter == half {
                return Some((e1, e2));
            }
        }
    }
    None
}

/// The degree premise reported alongside bridge pairs: `δ_d(h)` must exceed
/// the minimum `d`-degree of the opposite-parity comparison graph on the
/// same bipartition (`B` for even-side pairs, `B̄` for odd-side).
pub fn bridge_degree_premise(
    h: &Hypergraph,
    p: &Bipartition,
    d: usize,
    side: Parity,
) -> Result<(u64, u64, bool)> {
    let compare = parity_graph(p, h.k(), side.flip())?;
    let ours = h.min_d_degree(d)?.min_degree;
    let theirs = compare.min_d_degree(d)?.min_degree;
    Ok((ours, theirs, ours > theirs))
}

/// Every pair of edges meets.
pub fn is_intersecting(h: &Hypergraph) -> bool {
    let edges = h.edges();
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            if a.is_disjoint(*b) {
                return false;
            }
        }
    }
    true
}

/// Least vertex lying in every edge, if any. An edgeless hypergraph is a
/// substar through vertex 0.
pub fn is_substar(h: &Hypergraph) -> Option<usize> {
    if h.n() == 0 {
        return None;
    }
    let mut common = u64::MAX;
    for e in h.edges() {
        common &= e.mask();
    }
    VertexSet::from_mask(common)
        .intersection(VertexSet::EMPTY.complement_within(h.n()))
        .min_vertex()
}
