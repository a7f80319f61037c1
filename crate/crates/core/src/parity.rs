//! Binary representations of `(k/2)`-cycles, parity arithmetic, and
//! search-free non-Hamiltonicity certificates.
//!
//! Given a bipartition `(A, B)`, a Hamilton `(k/2)`-cycle with blocks
//! `L_1, .., L_t` gets the bit string `b_1 .. b_t` with `b_i = 1` iff
//! `|L_i ∩ A|` is odd. An edge `L_i ∪ L_{i+1}` is odd exactly when
//! `b_i ≠ b_{i+1}`, and `Σ b_i ≡ |A| (mod 2)` for spanning cycles. The
//! certificates below turn these two facts into contradictions that rule out
//! Hamilton `(k/2)`-cycles for every extremal family member without any
//! search.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{ExtremalSpec, Variant};
use crate::hypergraph::{subsets_of_set, Bipartition, Hypergraph, Parity, VertexSet};
use crate::solver::{deadline_of, Ctl, CycleWitness, Outcome, PathWitness, Solve, SolveOptions};
use crate::structure::Alpha;

/// The bit string `b_1 .. b_t` of a `(k/2)`-cycle relative to a bipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryRepresentation {
    pub bits: Vec<u8>,
}

impl BinaryRepresentation {
    pub fn t(&self) -> usize {
        self.bits.len()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for BinaryRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Bits of a structurally valid `(k/2)`-cycle: `ell = k/2`, at least three
/// pairwise disjoint equal blocks. Does not check edge membership; use
/// [`binary_representation_verified`] to insist on a verified witness.
pub fn binary_representation(
    cycle: &CycleWitness,
    k: usize,
    p: &Bipartition,
) -> Result<BinaryRepresentation> {
    if k % 2 != 0 || cycle.ell != k / 2 {
        return Err(Error::InvalidWitness(format!(
            "binary representation needs ell = k/2, found ell = {} for k = {k}",
            cycle.ell
        )));
    }
    let blocks = cycle
        .blocks(k)
        .ok_or_else(|| Error::InvalidWitness("order length not divisible into blocks".into()))?;
    if blocks.len() < 3 {
        return Err(Error::InvalidWitness(format!(
            "a cycle has at least 3 blocks, found {}",
            blocks.len()
        )));
    }
    let mut seen = VertexSet::EMPTY;
    for b in &blocks {
        if b.len() != k / 2 || !seen.is_disjoint(*b) {
            return Err(Error::InvalidWitness("blocks must be disjoint (k/2)-sets".into()));
        }
        seen = seen.union(*b);
    }
    let bits = blocks.iter().map(|b| p.parity_of(*b).bit()).collect();
    Ok(BinaryRepresentation { bits })
}

/// Bits of a witness after full verification against `h`.
pub fn binary_representation_verified(
    h: &Hypergraph,
    cycle: &CycleWitness,
    p: &Bipartition,
) -> Result<BinaryRepresentation> {
    if !cycle.verify(h) {
        return Err(Error::InvalidWitness(
            "cycle witness does not verify against the hypergraph".into(),
        ));
    }
    binary_representation(cycle, h.k(), p)
}

/// Exact counts of odd and even edges relative to a bipartition.
pub fn edge_parity_profile(h: &Hypergraph, p: &Bipartition) -> (u64, u64) {
    let mut odd = 0u64;
    for e in h.edges() {
        if p.parity_of(*e) == Parity::Odd {
            odd += 1;
        }
    }
    (odd, h.edge_count() as u64 - odd)
}

/// A machine-checkable proof of non-Hamiltonicity from parity arithmetic.
/// The checker re-derives the contradiction from these integers and the
/// hypergraph's edge-parity profile alone; no cycle search is involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ParityCertificate {
    /// Every edge is even, so all cycle bits agree and their sum over an
    /// even number of blocks is even, while `Σ b_i ≡ |A|` is odd. Also kills
    /// perfect matchings by the same sum.
    AllEvenWithOddA { t: usize, a_size: usize },
    /// Every edge is odd, so bits alternate and the weight is `t/2 = n/k`,
    /// which has the wrong parity against `|A|`.
    PmCardinalityMismatch {
        t: usize,
        pm_size: usize,
        a_size: usize,
    },
    /// Every edge is odd yet `t` is odd: no cyclic string alternates.
    AllEdgesOddTOdd { t: usize },
    /// Even edges form a star inside `A`. A cycle must then contain exactly
    /// one even edge, forcing the string `00101..01` (even half-blocks) or
    /// `11010..10` (odd half-blocks), whose weight clashes with `|A|`.
    BprimeSingleEvenParityClash {
        t: usize,
        floor_n_over_k: usize,
        a_size: usize,
        half_is_even: bool,
        apex: usize,
    },
}

/// Produces the certificate matching the family member's obstruction case.
pub fn certify_non_hamiltonian(spec: &ExtremalSpec) -> Result<ParityCertificate> {
    spec.validate()
        .map_err(|e| Error::NoCertificate(format!("spec is not a family member: {e}")))?;
    let (n, k, a) = (spec.n, spec.k, spec.a_size);
    let t = n / (k / 2);
    Ok(match spec.variant {
        Variant::Bbar => ParityCertificate::AllEvenWithOddA { t, a_size: a },
        Variant::B => {
            if n % k == 0 {
                ParityCertificate::PmCardinalityMismatch {
                    t,
                    pm_size: n / k,
                    a_size: a,
                }
            } else {
                ParityCertificate::AllEdgesOddTOdd { t }
            }
        }
        Variant::Bprime => ParityCertificate::BprimeSingleEvenParityClash {
            t,
            floor_n_over_k: n / k,
            a_size: a,
            half_is_even: (k / 2) % 2 == 0,
            apex: spec.effective_apex(),
        },
        Variant::BbarPrime4 => {
            return Err(Error::NoCertificate(
                "bbar-prime4 is outside the certified family".into(),
            ))
        }
    })
}

/// Replays the certificate's argument against an arbitrary hypergraph and
/// bipartition: true iff the structural premise holds for `(h, p)` and the
/// parity arithmetic rules out every admissible cycle string. False means
/// the certificate does not apply.
pub fn check_certificate(cert: &ParityCertificate, h: &Hypergraph, p: &Bipartition) -> bool {
    let (n, k) = (h.n(), h.k());
    if k % 2 != 0 || n % (k / 2) != 0 || p.n() != n {
        return false;
    }
    let t_actual = n / (k / 2);
    let (odd, even) = edge_parity_profile(h, p);
    match *cert {
        ParityCertificate::AllEvenWithOddA { t, a_size } => {
            t == t_actual
                && a_size == p.a_size()
                && odd == 0
                && t % 2 == 0
                && a_size % 2 == 1
        }
        ParityCertificate::PmCardinalityMismatch {
            t,
            pm_size,
            a_size,
        } => {
            t == t_actual
                && a_size == p.a_size()
                && n % k == 0
                && pm_size == n / k
                && even == 0
                && t % 2 == 0
                && pm_size % 2 != a_size % 2
        }
        ParityCertificate::AllEdgesOddTOdd { t } => t == t_actual && even == 0 && t % 2 == 1,
        ParityCertificate::BprimeSingleEvenParityClash {
            t,
            floor_n_over_k,
            a_size,
            half_is_even,
            apex,
        } => {
            if t != t_actual
                || a_size != p.a_size()
                || n % k == 0
                || floor_n_over_k != n / k
                || half_is_even != ((k / 2) % 2 == 0)
                || t % 2 == 0
                || !p.a().contains(apex)
            {
                return false;
            }
            // premise: every even edge lies inside A and contains the apex
            let star_ok = h.edges().iter().all(|e| {
                p.parity_of(*e) == Parity::Odd
                    || (e.is_subset_of(p.a()) && e.contains(apex))
            });
            if !star_ok {
                return false;
            }
            // zero even edges: reduces to the alternating/odd-t contradiction,
            // which t % 2 == 1 already settles. Exactly one even edge: the
            // string weight is floor(n/k) (even half-blocks) or
            // floor(n/k) + 1 (odd half-blocks) and must equal |A| mod 2.
            // Two adjacent even edges would make the odd-edge count t - 2,
            // which is odd yet always even; three or more even edges contain
            // a disjoint pair, impossible in a star.
            let weight = if half_is_even {
                floor_n_over_k
            } else {
                floor_n_over_k + 1
            };
            weight % 2 != a_size % 2
        }
    }
}

/// Whether an even `k`-set meeting `A` in `x` vertices can be partitioned
/// into two `(k/2)`-sets that are both of parity `half`. Aside from the
/// boundary cases `x ∈ {0, k}`, both parities are realisable.
pub fn even_set_split_exists(k: usize, x: usize, half: Parity) -> bool {
    if k % 2 != 0 || x > k || x % 2 != 0 {
        return false;
    }
    let lo = x.saturating_sub(k / 2);
    let hi = (k / 2).min(x);
    (lo..=hi).any(|a| Parity::of(a) == half && Parity::of(x - a) == half)
}

/// The claimed split existence, by case: odd halves exist for `0 < x < k`
/// and for `x = k` when `k/2` is odd; even halves exist for `x < k` and for
/// `x = k` when `k/2` is even.
pub fn even_set_split_claimed(k: usize, x: usize, half: Parity) -> bool {
    if k % 2 != 0 || x > k || x % 2 != 0 {
        return false;
    }
    match half {
        Parity::Odd => (0 < x && x < k) || (x == k && (k / 2) % 2 == 1),
        Parity::Even => x < k || (x == k && (k / 2) % 2 == 0),
    }
}

/// Searches for a `(k/2)`-path whose block parities realise `pattern`
/// bit-for-bit and whose two end blocks are `alpha`-good with respect to
/// `reference`. Blocks are enumerated in ascending bitmask order and a
/// branch dies the moment its bit cannot match the pattern, so the first
/// hit is the least witness.
pub fn find_patterned_path(
    h: &Hypergraph,
    p: &Bipartition,
    pattern: &str,
    alpha: Alpha,
    reference: &Hypergraph,
    opts: &SolveOptions,
) -> Result<Solve<PathWitness>> {
    let bits: Vec<Parity> = pattern
        .chars()
        .map(|c| match c {
            '0' => Ok(Parity::Even),
            '1' => Ok(Parity::Odd),
            other => Err(Error::InvalidPattern(format!(
                "pattern may contain only 0 and 1, found {other:?}"
            ))),
        })
        .collect::<Result<_>>()?;
    if bits.len() < 2 {
        return Err(Error::InvalidPattern(format!(
            "pattern must have at least 2 blocks, found {}",
            bits.len()
        )));
    }
    if h.k() % 2 != 0 {
        return Err(Error::InvalidInput("patterned paths need even k".into()));
    }
    if reference.n() != h.n() || reference.k() != h.k() {
        return Err(Error::IncompatibleHypergraphs {
            n1: h.n(),
            k1: h.k(),
            n2: reference.n(),
            k2: reference.k(),
        });
    }

    let t0 = std::time::Instant::now();
    let mut ctl = Ctl::new(deadline_of(opts), None);
    let mut goodness: std::collections::HashMap<u64, bool> = std::collections::HashMap::new();
    let mut acc: Vec<VertexSet> = Vec::with_capacity(bits.len());

    struct Search<'a, 'c> {
        h: &'a Hypergraph,
        p: &'a Bipartition,
        bits: &'a [Parity],
        alpha: Alpha,
        reference: &'a Hypergraph,
        goodness: &'a mut std::collections::HashMap<u64, bool>,
        ctl: &'a mut Ctl<'c>,
    }

    impl Search<'_, '_> {
        fn good(&mut self, block: VertexSet) -> Result<bool> {
            if let Some(&g) = self.goodness.get(&block.mask()) {
                return Ok(g);
            }
            let g =
                crate::structure::is_alpha_good(block, self.h, self.reference, self.alpha)?;
            self.goodness.insert(block.mask(), g);
            Ok(g)
        }

        fn dfs(&mut self, acc: &mut Vec<VertexSet>, used: VertexSet) -> Result<bool> {
            let i = acc.len();
            if i == self.bits.len() {
                return Ok(true);
            }
            let half = self.h.k() / 2;
            let free = used.complement_within(self.h.n());
            let last_index = self.bits.len() - 1;
            for cand in subsets_of_set(free, half) {
                if !self.ctl.tick() {
                    return Ok(false);
                }
                if self.p.parity_of(cand) != self.bits[i] {
                    continue;
                }
                if i > 0 && !self.h.contains_edge(acc[i - 1].union(cand)) {
                    continue;
                }
                if (i == 0 || i == last_index) && !self.good(cand)? {
                    continue;
                }
                acc.push(cand);
                if self.dfs(acc, used.union(cand))? {
                    return Ok(true);
                }
                acc.pop();
                if !self.ctl.running() {
                    return Ok(false);
                }
            }
            Ok(false)
        }
    }

    let mut search = Search {
        h,
        p,
        bits: &bits,
        alpha,
        reference,
        goodness: &mut goodness,
        ctl: &mut ctl,
    };
    let found = search.dfs(&mut acc, VertexSet::EMPTY)?;
    let outcome = if found {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{ExtremalSpec, Variant};
    use crate::solver::find_hamilton_half_cycle;

    fn vs(indices: &[usize]) -> VertexSet {
        VertexSet::from_indices(indices.iter().copied()).unwrap()
    }

    #[test]
    fn bits_by_definition() {
        let p = Bipartition::prefix(2, 8).unwrap();
        // |L_i ∩ A| = 1, 0, 1, 0 with A = {0,1}
        let blocks = [vs(&[0, 3]), vs(&[4, 5]), vs(&[1, 6]), vs(&[2, 7])];
        let w = CycleWitness::from_half_blocks(4, &blocks);
        let bits = binary_representation(&w, 4, &p).unwrap();
        assert_eq!(bits.to_string(), "1010");
        assert_eq!(bits.weight() % 2, p.a_size() % 2);
    }

    #[test]
    fn cycle_inside_b_side_is_all_zero() {
        let p = Bipartition::prefix(2, 10).unwrap();
        let blocks = [vs(&[2, 3]), vs(&[4, 5]), vs(&[6, 7]), vs(&[8, 9])];
        let w = CycleWitness::from_half_blocks(4, &blocks);
        let bits = binary_representation(&w, 4, &p).unwrap();
        assert_eq!(bits.to_string(), "0000");
        assert_eq!(bits.weight(), 0);
    }

    #[test]
    fn verified_variant_rejects_bad_witness() {
        let h = Hypergraph::empty(8, 4).unwrap();
        let p = Bipartition::prefix(3, 8).unwrap();
        let blocks = [vs(&[0, 1]), vs(&[2, 3]), vs(&[4, 5]), vs(&[6, 7])];
        let w = CycleWitness::from_half_blocks(4, &blocks);
        assert!(matches!(
            binary_representation_verified(&h, &w, &p),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn cycles_in_all_odd_graphs_alternate() {
        // out-of-family all-odd graph with a Hamilton half-cycle
        let spec = ExtremalSpec::new(Variant::B, 8, 4, 2);
        let h = spec.build_forced().unwrap();
        let p = spec.partition().unwrap();
        let s = find_hamilton_half_cycle(&h, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().expect("cycle exists for even |A|");
        let bits = binary_representation_verified(&h, w, &p).unwrap();
        let t = bits.t();
        for i in 0..t {
            assert_ne!(bits.bits[i], bits.bits[(i + 1) % t]);
        }
    }

    #[test]
    fn profile_counts() {
        let p = Bipartition::prefix(3, 8).unwrap();
        let b = ExtremalSpec::new(Variant::B, 8, 4, 3).build().unwrap();
        assert_eq!(edge_parity_profile(&b, &p), (35, 0));
        let bbar = ExtremalSpec::new(Variant::Bbar, 8, 4, 3).build().unwrap();
        assert_eq!(edge_parity_profile(&bbar, &p), (0, 35));
        let complete = Hypergraph::complete(8, 4).unwrap();
        let p4 = Bipartition::prefix(4, 8).unwrap();
        assert_eq!(edge_parity_profile(&complete, &p4), (32, 38));
    }

    #[test]
    fn certificates_match_cases() {
        let c = certify_non_hamiltonian(&ExtremalSpec::new(Variant::B, 10, 4, 5)).unwrap();
        assert_eq!(c, ParityCertificate::AllEdgesOddTOdd { t: 5 });

        let c = certify_non_hamiltonian(&ExtremalSpec::new(Variant::Bbar, 8, 4, 3)).unwrap();
        assert_eq!(
            c,
            ParityCertificate::AllEvenWithOddA {
                t: 4,
                a_size: 3
            }
        );

        let mut spec = ExtremalSpec::new(Variant::Bprime, 10, 4, 3);
        spec.apex = Some(0);
        let c = certify_non_hamiltonian(&spec).unwrap();
        assert_eq!(
            c,
            ParityCertificate::BprimeSingleEvenParityClash {
                t: 5,
                floor_n_over_k: 2,
                a_size: 3,
                half_is_even: true,
                apex: 0
            }
        );

        assert!(certify_non_hamiltonian(&ExtremalSpec::new(Variant::Bbar, 8, 4, 2)).is_err());
    }

    #[test]
    fn checker_self_consistency_and_premise_failure() {
        let spec = ExtremalSpec::new(Variant::B, 10, 4, 5);
        let h = spec.build().unwrap();
        let p = spec.partition().unwrap();
        let cert = certify_non_hamiltonian(&spec).unwrap();
        assert!(check_certificate(&cert, &h, &p));

        // adding one even edge breaks the zero-even-edges premise
        let with_even = h.including(vs(&[0, 1, 5, 6])).unwrap();
        assert_eq!(p.parity_of(vs(&[0, 1, 5, 6])), Parity::Even);
        assert!(!check_certificate(&cert, &with_even, &p));
    }

    #[test]
    fn checker_invariant_under_relabeling() {
        let spec = ExtremalSpec::new(Variant::Bbar, 8, 4, 3);
        let h = spec.build().unwrap();
        let cert = certify_non_hamiltonian(&spec).unwrap();
        // permutation fixing the part sizes: swap within A and within B,
        // then an arbitrary relabeling moving A elsewhere
        let perm = [5, 0, 7, 1, 2, 3, 4, 6]; // image of each vertex
        let edges = h
            .edges()
            .iter()
            .map(|e| VertexSet::from_indices(e.iter().map(|v| perm[v])).unwrap())
            .collect();
        let hp = Hypergraph::new(8, 4, edges).unwrap();
        let ap = VertexSet::from_indices([perm[0], perm[1], perm[2]]).unwrap();
        let pp = Bipartition::new(ap, 8).unwrap();
        assert!(check_certificate(&cert, &hp, &pp));
    }

    #[test]
    fn split_feasibility_matches_claims_exhaustively() {
        for k in [4usize, 6, 8] {
            for x in (0..=k).step_by(2) {
                for half in [Parity::Even, Parity::Odd] {
                    assert_eq!(
                        even_set_split_exists(k, x, half),
                        even_set_split_claimed(k, x, half),
                        "k={k} x={x} half={half:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn patterned_path_examples() {
        // complete 6-graph: three even blocks always exist
        let h = Hypergraph::complete(18, 6).unwrap();
        let p = Bipartition::prefix(9, 18).unwrap();
        let alpha = Alpha::new(1, 1).unwrap();
        let s = find_patterned_path(&h, &p, "000", alpha, &h, &SolveOptions::default()).unwrap();
        let w = s.outcome.witness().expect("000 path in complete graph");
        assert!(w.verify(&h));
        for b in &w.blocks {
            assert_eq!(p.parity_of(*b), Parity::Even);
        }

        // all-odd graph has no even edge, so no 00 path
        let b = ExtremalSpec::new(Variant::B, 12, 6, 6).build_forced().unwrap();
        let pb = Bipartition::prefix(6, 12).unwrap();
        let s = find_patterned_path(&b, &pb, "00", alpha, &b, &SolveOptions::default()).unwrap();
        assert!(s.outcome.is_exhausted());

        // all-even graph with odd k/2: an even edge splits into two odd blocks
        let bbar = ExtremalSpec::new(Variant::Bbar, 12, 6, 6)
            .build_forced()
            .unwrap();
        let s =
            find_patterned_path(&bbar, &pb, "11", alpha, &bbar, &SolveOptions::default()).unwrap();
        assert!(s.outcome.is_found());
    }

    #[test]
    fn pattern_validation() {
        let h = Hypergraph::complete(8, 4).unwrap();
        let p = Bipartition::prefix(4, 8).unwrap();
        let alpha = Alpha::new(1, 1).unwrap();
        assert!(matches!(
            find_patterned_path(&h, &p, "01x", alpha, &h, &SolveOptions::default()),
            Err(Error::InvalidPattern(_))
        ));
        assert!(matches!(
            find_patterned_path(&h, &p, "1", alpha, &h, &SolveOptions::default()),
            Err(Error::InvalidPattern(_))
        ));
    }
}
