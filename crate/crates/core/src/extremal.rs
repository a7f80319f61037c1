//! The extremal family of parity-obstructed hypergraphs and its degree
//! thresholds.
//!
//! Fix a partition `V = A ∪ B`. `B_{n,k}(A,B)` consists of all odd `k`-sets
//! (odd intersection with `A`), `B̄_{n,k}(A,B)` of all even ones, and
//! `B′_{n,k}(A,B)` adds to `B_{n,k}` the star of all `k`-subsets of `A`
//! through a fixed apex. Family membership conditions:
//!
//! * `n ∈ kN`: all `B` with `n/k - |A|` odd, all `B̄` with `|A|` odd;
//! * `n ∈ (k/2)N \ kN`: all `B`, plus `B′` when `k ∈ 4N` and `⌊n/k⌋ - |A|`
//!   is odd, or when `k ∈ 2N \ 4N` and `⌊n/k⌋ - |A|` is even.
//!
//! `A` is always the prefix `{0, .., |A|-1}` and the apex defaults to vertex
//! 0; any other choice is isomorphic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{subsets_of_size, Bipartition, Hypergraph, Parity, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// All odd `k`-sets.
    B,
    /// All even `k`-sets.
    Bbar,
    /// All odd `k`-sets plus an apex star inside `A`.
    Bprime,
    /// `k = 4` only: all even 4-sets plus the 4-sets meeting `A` in exactly
    /// 3 vertices and containing the two least vertices of `A`. Never a
    /// family member here; buildable only through the forced pathway, for
    /// exploratory use.
    BbarPrime4,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::B => "b",
            Variant::Bbar => "bbar",
            Variant::Bprime => "bprime",
            Variant::BbarPrime4 => "bbar-prime4",
        }
    }
}

/// A member description of the extremal family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub variant: Variant,
    pub n: usize,
    pub k: usize,
    pub a_size: usize,
    /// Star apex, `Bprime` only; defaults to the least vertex of `A`.
    pub apex: Option<usize>,
}

impl ExtremalSpec {
    pub fn new(variant: Variant, n: usize, k: usize, a_size: usize) -> Self {
        ExtremalSpec {
            variant,
            n,
            k,
            a_size,
            apex: None,
        }
    }

    pub fn partition(&self) -> Result<Bipartition> {
        Bipartition::prefix(self.a_size, self.n)
    }

    pub fn effective_apex(&self) -> usize {
        self.apex.unwrap_or(0)
    }

    /// Shape constraints that hold for every buildable spec, forced or not.
    fn check_structure(&self) -> Result<()> {
        if self.k < 2 || self.k % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "uniformity k = {} must be even and at least 4",
                self.k
            )));
        }
        if self.k < 4 {
            return Err(Error::InvalidSpec("k must be at least 4".into()));
        }
        if self.n > crate::MAX_VERTICES {
            return Err(Error::Capacity(self.n));
        }
        if self.a_size > self.n {
            return Err(Error::InvalidSpec(format!(
                "|A| = {} exceeds n = {}",
                self.a_size, self.n
            )));
        }
        match self.variant {
            Variant::Bprime => {
                let apex = self.effective_apex();
                if self.a_size == 0 || apex >= self.a_size {
                    return Err(Error::InvalidSpec(format!(
                        "apex {apex} must lie in A = [0, {})",
                        self.a_size
                    )));
                }
            }
            Variant::BbarPrime4 => {
                if self.k != 4 {
                    return Err(Error::InvalidSpec(
                        "the bbar-prime4 generator is defined for k = 4 only".into(),
                    ));
                }
                if self.a_size < 2 {
                    return Err(Error::InvalidSpec(
                        "bbar-prime4 needs |A| >= 2 to host its fixed pair".into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Family-membership parity conditions on top of the structural ones.
    pub fn validate(&self) -> Result<()> {
        self.check_structure()?;
        let (n, k, a) = (self.n, self.k, self.a_size);
        if n % (k / 2) != 0 {
            return Err(Error::InvalidSpec(format!(
                "n = {n} is not a multiple of k/2 = {}",
                k / 2
            )));
        }
        let in_kn = n % k == 0;
        match self.variant {
            Variant::B => {
                if in_kn && (n / k + a) % 2 == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "variant b with n in kN requires n/k - |A| odd; n/k = {}, |A| = {a}",
                        n / k
                    )));
                }
            }
            Variant::Bbar => {
                if !in_kn {
                    return Err(Error::InvalidSpec(
                        "variant bbar is a family member only for n in kN".into(),
                    ));
                }
                if a % 2 == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "variant bbar requires |A| odd, found {a}"
                    )));
                }
            }
            Variant::Bprime => {
                if in_kn {
                    return Err(Error::InvalidSpec(
                        "variant bprime is a family member only for n in (k/2)N \\ kN".into(),
                    ));
                }
                let q = n / k;
                let ok = if k % 4 == 0 {
                    (q + a) % 2 == 1
                } else {
                    (q + a) % 2 == 0
                };
                if !ok {
                    return Err(Error::InvalidSpec(format!(
                        "variant bprime parity condition fails: floor(n/k) = {q}, |A| = {a}, k mod 4 = {}",
                        k % 4
                    )));
                }
            }
            Variant::BbarPrime4 => {
                return Err(Error::InvalidSpec(
                    "bbar-prime4 is never a family member; build it with force".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn is_family_member(&self) -> bool {
        self.validate().is_ok()
    }

    /// Builds the hypergraph after full membership validation.
    pub fn build(&self) -> Result<Hypergraph> {
        self.validate()?;
        self.construct()
    }

    /// Builds with the membership parity conditions skipped, for exploratory
    /// out-of-family constructions. Structural constraints still apply.
    pub fn build_forced(&self) -> Result<Hypergraph> {
        self.check_structure()?;
        self.construct()
    }

    fn construct(&self) -> Result<Hypergraph> {
        let p = self.partition()?;
        let a_mask = p.a();
        let edges: Vec<VertexSet> = match self.variant {
            Variant::B => subsets_of_size(self.n, self.k)
                .filter(|e| p.parity_of(*e) == Parity::Odd)
                .collect(),
            Variant::Bbar => subsets_of_size(self.n, self.k)
                .filter(|e| p.parity_of(*e) == Parity::Even)
                .collect(),
            Variant::Bprime => {
                let apex = self.effective_apex();
                subsets_of_size(self.n, self.k)
                    .filter(|e| {
                        p.parity_of(*e) == Parity::Odd
                            || (e.is_subset_of(a_mask) && e.contains(apex))
                    })
                    .collect()
            }
            Variant::BbarPrime4 => {
                let mut pair = a_mask.iter().take(2);
                let v1 = pair.next().expect("|A| >= 2");
                let v2 = pair.next().expect("|A| >= 2");
                let pair_mask = VertexSet::EMPTY.insert(v1).insert(v2);
                subsets_of_size(self.n, self.k)
                    .filter(|e| {
                        p.parity_of(*e) == Parity::Even
                            || (e.intersection(a_mask).len() == 3
                                && pair_mask.is_subset_of(*e))
                    })
                    .collect()
            }
        };
        Hypergraph::new(self.n, self.k, edges)
    }
}

/// All family members for the given `(n, k)` in deterministic order: `B`
/// ascending by `|A|`, then `B̄` (or `B′`) ascending by `|A|`. `B′` entries
/// with `|A| = 0` are skipped since they cannot host an apex; as hypergraphs
/// they coincide with `B`, which is always listed.
pub fn enumerate_family(n: usize, k: usize) -> Result<Vec<ExtremalSpec>> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "family is defined for even k >= 4, found k = {k}"
        )));
    }
    if n % (k / 2) != 0 {
        return Err(Error::InvalidInput(format!(
            "n = {n} is not a multiple of k/2 = {}",
            k / 2
        )));
    }
    let mut out = Vec::new();
    let in_kn = n % k == 0;
    for a in 0..=n {
        let spec = ExtremalSpec::new(Variant::B, n, k, a);
        if spec.is_family_member() {
            out.push(spec);
        }
    }
    for a in 0..=n {
        let variant = if in_kn { Variant::Bbar } else { Variant::Bprime };
        let mut spec = ExtremalSpec::new(variant, n, k, a);
        if variant == Variant::Bprime {
            spec.apex = Some(0);
        }
        if spec.is_family_member() {
            out.push(spec);
        }
    }
    Ok(out)
}

/// Closed-form maximum of the minimum codegree over the family:
/// `n/2 - k + 1` when `n ∈ kN` and `n/2 - n/k` is even, else
/// `⌊n/2⌋ - k + 2`. Returned as `i64` since the expression can dip below
/// zero at very small `n`.
pub fn threshold_codegree(n: usize, k: usize) -> Result<i64> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "codegree threshold needs even k >= 4, found {k}"
        )));
    }
    if n % (k / 2) != 0 {
        return Err(Error::InvalidInput(format!(
            "n = {n} is not a multiple of k/2 = {}",
            k / 2
        )));
    }
    let (n, k) = (n as i64, k as i64);
    if n % k == 0 && (n / 2 - n / k) % 2 == 0 {
        Ok(n / 2 - k + 1)
    } else {
        Ok(n / 2 - k + 2)
    }
}

/// Brute-force family maximum of the minimum `d`-degree, with one achieving
/// spec (the first in enumeration order). Exposed for the full range
/// `k/2 <= d <= k-1`; for `d < k-1` no closed form is asserted anywhere and
/// the output is exploratory data.
pub fn threshold_bruteforce(n: usize, k: usize, d: usize) -> Result<(u64, ExtremalSpec)> {
    if d < k / 2 || d >= k {
        return Err(Error::InvalidInput(format!(
            "d = {d} outside k/2..=k-1 for k = {k}"
        )));
    }
    let family = enumerate_family(n, k)?;
    if family.is_empty() {
        return Err(Error::InvalidInput(format!(
            "family for (n, k) = ({n}, {k}) is empty"
        )));
    }
    let mut best: Option<(u64, ExtremalSpec)> = None;
    for spec in family {
        let h = spec.build()?;
        let profile = h.min_d_degree(d)?;
        match best {
            Some((cur, _)) if profile.min_degree <= cur => {}
            _ => best = Some((profile.min_degree, spec)),
        }
    }
    Ok(best.expect("non-empty family"))
}

/// The star: all `k`-sets containing `apex`.
pub fn build_star(n: usize, k: usize, apex: usize) -> Result<Hypergraph> {
    if apex >= n {
        return Err(Error::InvalidInput(format!(
            "apex {apex} out of range [0, {n})"
        )));
    }
    let edges = subsets_of_size(n, k).filter(|e| e.contains(apex)).collect();
    Hypergraph::new(n, k, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{binomial, edit_distance};

    #[test]
    fn bbar_and_b_partition_all_k_sets() {
        let bbar = ExtremalSpec::new(Variant::Bbar, 8, 4, 3).build().unwrap();
        assert_eq!(bbar.edge_count() as u64, 35);
        let b = ExtremalSpec::new(Variant::B, 8, 4, 3).build().unwrap();
        assert_eq!(b.edge_count() as u64, 35);
        assert_eq!(
            b.edge_count() as u64 + bbar.edge_count() as u64,
            binomial(8, 4)
        );
        assert_eq!(edit_distance(&b, &bbar).unwrap(), binomial(8, 4));
    }

    #[test]
    fn bprime_membership_and_star_count() {
        // k in 2N \ 4N: floor(n/k) - |A| must be even
        let bad = ExtremalSpec::new(Variant::Bprime, 15, 6, 9);
        assert!(bad.validate().is_err());
        let good = ExtremalSpec::new(Variant::Bprime, 15, 6, 8);
        let h = good.build().unwrap();
        let b = ExtremalSpec::new(Variant::B, 15, 6, 8).build().unwrap();
        // the apex star inside A is even, hence disjoint from the odd part
        assert_eq!(
            h.edge_count() as u64 - b.edge_count() as u64,
            binomial(7, 5)
        );
    }

    #[test]
    fn force_build_skips_parity_conditions() {
        let spec = ExtremalSpec::new(Variant::Bbar, 8, 4, 4);
        assert!(spec.build().is_err());
        let h = spec.build_forced().unwrap();
        assert_eq!(h.edge_count(), 38);
    }

    #[test]
    fn family_k4_n8() {
        let fam = enumerate_family(8, 4).unwrap();
        let b: Vec<usize> = fam
            .iter()
            .filter(|s| s.variant == Variant::B)
            .map(|s| s.a_size)
            .collect();
        let bbar: Vec<usize> = fam
            .iter()
            .filter(|s| s.variant == Variant::Bbar)
            .map(|s| s.a_size)
            .collect();
        assert_eq!(b, vec![1, 3, 5, 7]);
        assert_eq!(bbar, vec![1, 3, 5, 7]);
        assert_eq!(fam.len(), 8);
    }

    #[test]
    fn family_k4_n10() {
        let fam = enumerate_family(10, 4).unwrap();
        let b: Vec<usize> = fam
            .iter()
            .filter(|s| s.variant == Variant::B)
            .map(|s| s.a_size)
            .collect();
        let bprime: Vec<usize> = fam
            .iter()
            .filter(|s| s.variant == Variant::Bprime)
            .map(|s| s.a_size)
            .collect();
        assert_eq!(b, (0..=10).collect::<Vec<_>>());
        assert_eq!(bprime, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn family_k6_n9() {
        let fam = enumerate_family(9, 6).unwrap();
        let b: Vec<usize> = fam
            .iter()
            .filter(|s| s.variant == Variant::B)
            .map(|s| s.a_size)
            .collect();
        let bprime: Vec<usize> = fam
            .iter()
            .filter(|s| s.variant == Variant::Bprime)
            .map(|s| s.a_size)
            .collect();
        assert_eq!(b, (0..=9).collect::<Vec<_>>());
        assert_eq!(bprime, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn every_family_member_revalidates_and_builds() {
        for (n, k) in [(8, 4), (10, 4), (9, 6), (12, 6)] {
            for spec in enumerate_family(n, k).unwrap() {
                spec.validate().unwrap();
                let h = spec.build().unwrap();
                assert_eq!(h.n(), n);
                assert_eq!(h.k(), k);
            }
        }
    }

    #[test]
    fn codegree_threshold_formula() {
        assert_eq!(threshold_codegree(12, 6).unwrap(), 1);
        assert_eq!(threshold_codegree(15, 6).unwrap(), 3);
        assert_eq!(threshold_codegree(8, 4).unwrap(), 1);
        assert!(threshold_codegree(8, 5).is_err());
        assert!(threshold_codegree(7, 4).is_err());
    }

    #[test]
    fn bruteforce_matches_formula_at_small_sizes() {
        let (v, _) = threshold_bruteforce(12, 6, 5).unwrap();
        assert_eq!(v as i64, threshold_codegree(12, 6).unwrap());
        let (v, _) = threshold_bruteforce(8, 4, 3).unwrap();
        assert_eq!(v as i64, threshold_codegree(8, 4).unwrap());
    }

    #[test]
    fn bruteforce_rejects_bad_d() {
        assert!(threshold_bruteforce(8, 4, 1).is_err());
        assert!(threshold_bruteforce(8, 4, 4).is_err());
    }

    #[test]
    fn star_counts_and_degrees() {
        let s = build_star(6, 4, 0).unwrap();
        assert_eq!(s.edge_count() as u64, binomial(5, 3));
        let s = build_star(4, 4, 3).unwrap();
        assert_eq!(s.edge_count(), 1);
        // minimum d-degree of a star is C(n-1-d, k-1-d)
        for (n, k, d) in [(8, 4, 3), (8, 4, 2), (9, 6, 5), (10, 4, 1)] {
            let s = build_star(n, k, 0).unwrap();
            assert_eq!(
                s.min_d_degree(d).unwrap().min_degree,
                binomial(n - 1 - d, k - 1 - d),
                "star min degree for (n,k,d)=({n},{k},{d})"
            );
        }
    }

    #[test]
    fn first_class_restriction_equals_full_family_for_kn() {
        // for n in kN the family consists of the n-in-kN class only, so the
        // restricted maximum must equal the unrestricted one
        for (n, k, d) in [(8, 4, 3), (12, 4, 3), (12, 6, 5)] {
            let full = threshold_bruteforce(n, k, d).unwrap().0;
            let restricted = enumerate_family(n, k)
                .unwrap()
                .into_iter()
                .map(|s| s.build().unwrap().min_d_degree(d).unwrap().min_degree)
                .max()
                .unwrap();
            assert_eq!(full, restricted);
        }
    }

    #[test]
    fn bbar_prime4_generator() {
        let spec = ExtremalSpec::new(Variant::BbarPrime4, 10, 4, 5);
        assert!(spec.build().is_err());
        let h = spec.build_forced().unwrap();
        let bbar = ExtremalSpec::new(Variant::Bbar, 10, 4, 5)
            .build_forced()
            .unwrap();
        // added edges: |e ∩ A| = 3 containing {0,1}: C(3,1) * C(5,1)
        assert_eq!(h.edge_count(), bbar.edge_count() + 15);
        assert!(ExtremalSpec::new(Variant::BbarPrime4, 10, 6, 5)
            .build_forced()
            .is_err());
    }
}
