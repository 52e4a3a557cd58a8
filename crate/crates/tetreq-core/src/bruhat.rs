//! Higher Bruhat orders `B(n,k)`.
//!
//! `C(n,k)` is the set of `k`-element subsets of `{1..n}`. Every
//! `d ∈ C(n,k+1)` induces a packet: the facets `d̂_1, …, d̂_{k+1}` obtained
//! by deleting one entry of `d` at a time. A total order on `C(n,k)` is
//! admissible when every packet appears in it monotonically (all facets in
//! ascending hat order, or all in descending hat order); `A(n,k)` is the set
//! of admissible orders. Two admissible orders are equivalent when they
//! differ by swapping adjacent entries whose union has at least `k+2`
//! elements, and `B(n,k)` is the set of equivalence classes.
//!
//! `B(4,2)` has eight classes; they label the eight tetrahedron equations.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BruhatError {
    #[error("require 1 <= k <= n, got n={n}, k={k}")]
    Domain { n: u32, k: u32 },
    #[error("packets need k <= n-1, got n={n}, k={k}")]
    PacketDomain { n: u32, k: u32 },
    #[error("|C({n},{k})| = {size} exceeds the enumeration guard {guard}")]
    Resource { n: u32, k: u32, size: u64, guard: u64 },
    #[error("chain is not a permutation of C({n},{k})")]
    NotAPermutation { n: u32, k: u32 },
}

/// Element of `C(n,k)`: strictly increasing entries in `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple(Vec<u8>);

impl Tuple {
    pub fn new(indices: Vec<u8>) -> Option<Self> {
        if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Some(Self(indices))
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The facet `d̂_j`: `self` with its `j`-th smallest entry removed
    /// (`j` is 1-based).
    pub fn hat(&self, j: usize) -> Tuple {
        debug_assert!(j >= 1 && j <= self.0.len());
        let mut v = self.0.clone();
        v.remove(j - 1);
        Tuple(v)
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A `(k+1)`-element parent together with its facets in hat order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packet {
    pub parent: Tuple,
    pub facets: Vec<Tuple>,
}

/// An element of `A(n,k)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleOrder {
    pub n: u32,
    pub k: u32,
    pub chain: Vec<Tuple>,
}

impl AdmissibleOrder {
    pub fn reversed(&self) -> AdmissibleOrder {
        let mut chain = self.chain.clone();
        chain.reverse();
        AdmissibleOrder { n: self.n, k: self.k, chain }
    }

    /// Compact serialization, e.g. `12.13.14.23.24.34`.
    pub fn serialize(&self) -> String {
        serialize_chain(&self.chain)
    }
}

impl fmt::Debug for AdmissibleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

pub fn serialize_chain(chain: &[Tuple]) -> String {
    let mut out = String::new();
    for (i, t) in chain.iter().enumerate() {
        if i > 0 {
            out.push('.');
        }
        out.push_str(&alloc::format!("{t}"));
    }
    out
}

/// An equivalence class in `B(n,k)`; `representative` is the
/// lexicographically least member and `members` are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatClass {
    pub representative: AdmissibleOrder,
    pub members: Vec<AdmissibleOrder>,
}

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// All of `C(n,k)` in lexicographic order.
pub fn subsets(n: u32, k: u32) -> Result<Vec<Tuple>, BruhatError> {
    if k < 1 || k > n {
        return Err(BruhatError::Domain { n, k });
    }
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    let mut cur: Vec<u8> = Vec::with_capacity(k as usize);
    fn rec(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Tuple>) {
        if cur.len() == k {
            out.push(Tuple(cur.clone()));
            return;
        }
        let remaining = k - cur.len();
        for i in start..=(n + 1 - remaining as u8) {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n as u8, k as usize, 1, &mut cur, &mut out);
    Ok(out)
}

/// One packet per element of `C(n,k+1)`, facets listed as `d̂_1 … d̂_{k+1}`.
pub fn packets(n: u32, k: u32) -> Result<Vec<Packet>, BruhatError> {
    if k < 1 || k > n.saturating_sub(1) {
        return Err(BruhatError::PacketDomain { n, k });
    }
    let parents = subsets(n, k + 1)?;
    Ok(parents
        .into_iter()
        .map(|parent| {
            let facets = (1..=(k + 1) as usize).map(|j| parent.hat(j)).collect();
            Packet { parent, facets }
        })
        .collect())
}

fn check_permutation(chain: &[Tuple], n: u32, k: u32) -> Result<Vec<Tuple>, BruhatError> {
    let all = subsets(n, k)?;
    if chain.len() != all.len() {
        return Err(BruhatError::NotAPermutation { n, k });
    }
    let seen: BTreeSet<&Tuple> = chain.iter().collect();
    if seen.len() != all.len() || !all.iter().all(|t| seen.contains(t)) {
        return Err(BruhatError::NotAPermutation { n, k });
    }
    Ok(all)
}

/// True iff every packet's facets occur monotonically in `chain`.
pub fn is_admissible(chain: &[Tuple], n: u32, k: u32) -> Result<bool, BruhatError> {
    check_permutation(chain, n, k)?;
    if k == n {
        return Ok(true);
    }
    let packets = packets(n, k)?;
    let pos = |t: &Tuple| chain.iter().position(|c| c == t).unwrap();
    Ok(packets.iter().all(|p| {
        let ps: Vec<usize> = p.facets.iter().map(pos).collect();
        ps.windows(2).all(|w| w[0] < w[1]) || ps.windows(2).all(|w| w[0] > w[1])
    }))
}

pub const DEFAULT_GUARD: u64 = 8;

/// `A(n,k)` under the default size guard.
pub fn enumerate_admissible(n: u32, k: u32) -> Result<Vec<AdmissibleOrder>, BruhatError> {
    enumerate_admissible_with_guard(n, k, DEFAULT_GUARD)
}

/// `A(n,k)`, refusing to enumerate when `|C(n,k)| > guard`.
///
/// Backtracking over chain prefixes: a packet whose facets have started to
/// appear must keep appearing in ascending or descending hat order, so a
/// placement is rejected as soon as the appearance sequence of any packet
/// stops being a prefix of `1..=k+1` or of its reverse.
pub fn enumerate_admissible_with_guard(
    n: u32,
    k: u32,
    guard: u64,
) -> Result<Vec<AdmissibleOrder>, BruhatError> {
    if k < 1 || k > n {
        return Err(BruhatError::Domain { n, k });
    }
    let size = binomial(n, k);
    if size > guard {
        return Err(BruhatError::Resource { n, k, size, guard });
    }
    let elements = subsets(n, k)?;
    let n_el = elements.len();

    // incidence: element index -> (packet index, 0-based hat position)
    let packet_list = if k < n { packets(n, k)? } else { Vec::new() };
    let mut incidence: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n_el];
    for (pi, p) in packet_list.iter().enumerate() {
        for (j, facet) in p.facets.iter().enumerate() {
            let ei = elements.binary_search(facet).expect("facet is in C(n,k)");
            incidence[ei].push((pi, j as u8));
        }
    }
    let facet_count = (k + 1) as u8;

    struct Search<'a> {
        elements: &'a [Tuple],
        incidence: &'a [Vec<(usize, u8)>],
        facet_count: u8,
        chosen: Vec<usize>,
        used: Vec<bool>,
        // per packet: hat positions in order of appearance so far
        seen: Vec<Vec<u8>>,
        out: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn admissible_prefix(&self, packet: usize, j: u8) -> bool {
            let seq = &self.seen[packet];
            match seq.len() {
                0 => j == 0 || j == self.facet_count - 1,
                _ => {
                    let first = seq[0];
                    let last = *seq.last().unwrap();
                    if first == 0 {
                        j == last + 1
                    } else {
                        j + 1 == last
                    }
                }
            }
        }

        fn rec(&mut self) {
            if self.chosen.len() == self.elements.len() {
                self.out.push(self.chosen.clone());
                return;
            }
            for ei in 0..self.elements.len() {
                if self.used[ei] {
                    continue;
                }
                if !self.incidence[ei]
                    .iter()
                    .all(|&(pi, j)| self.admissible_prefix(pi, j))
                {
                    continue;
                }
                self.used[ei] = true;
                self.chosen.push(ei);
                for &(pi, j) in &self.incidence[ei] {
                    self.seen[pi].push(j);
                }
                self.rec();
                for &(pi, _) in &self.incidence[ei] {
                    self.seen[pi].pop();
                }
                self.chosen.pop();
                self.used[ei] = false;
            }
        }
    }

    let mut search = Search {
        elements: &elements,
        incidence: &incidence,
        facet_count,
        chosen: Vec::new(),
        used: vec![false; n_el],
        seen: vec![Vec::new(); packet_list.len()],
        out: Vec::new(),
    };
    search.rec();

    let mut orders: Vec<AdmissibleOrder> = search
        .out
        .into_iter()
        .map(|idxs| AdmissibleOrder {
            n,
            k,
            chain: idxs.iter().map(|&i| elements[i].clone()).collect(),
        })
        .collect();
    orders.sort();
    Ok(orders)
}

/// Convention for reading a packet off a chain when collecting inversions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvConvention {
    /// `d` is an inversion when its facets appear as `d̂_1 < d̂_2 < …`.
    Ascending,
    /// `d` is an inversion when its facets appear as `d̂_1 > d̂_2 > …`.
    Descending,
}

/// `Inv(a)` in the ascending convention.
pub fn inversion_set(a: &AdmissibleOrder) -> Vec<Tuple> {
    inversion_set_with(a, InvConvention::Ascending)
}

pub fn inversion_set_with(a: &AdmissibleOrder, convention: InvConvention) -> Vec<Tuple> {
    let Ok(packet_list) = packets(a.n, a.k) else {
        return Vec::new();
    };
    let pos = |t: &Tuple| a.chain.iter().position(|c| c == t).unwrap();
    packet_list
        .into_iter()
        .filter(|p| {
            let ps: Vec<usize> = p.facets.iter().map(pos).collect();
            let ascending = ps.windows(2).all(|w| w[0] < w[1]);
            match convention {
                InvConvention::Ascending => ascending,
                InvConvention::Descending => !ascending,
            }
        })
        .map(|p| p.parent)
        .collect()
}

/// Positions where an adjacent swap stays inside the equivalence class:
/// the union of the two entries has at least `k+2` elements.
fn swappable(chain: &[Tuple], i: usize, k: u32) -> bool {
    let union: BTreeSet<u8> = chain[i]
        .indices()
        .iter()
        .chain(chain[i + 1].indices())
        .copied()
        .collect();
    union.len() as u32 >= k + 2
}

/// `B(n,k)`: the partition of `A(n,k)` under adjacent swaps of entries with
/// union of size at least `k+2`. Classes are sorted by their representative
/// (the lexicographically least member).
pub fn bruhat_classes(n: u32, k: u32) -> Result<Vec<BruhatClass>, BruhatError> {
    bruhat_classes_with_guard(n, k, DEFAULT_GUARD)
}

pub fn bruhat_classes_with_guard(
    n: u32,
    k: u32,
    guard: u64,
) -> Result<Vec<BruhatClass>, BruhatError> {
    let orders = enumerate_admissible_with_guard(n, k, guard)?;
    let mut assigned = vec![false; orders.len()];
    let mut classes = Vec::new();
    for start in 0..orders.len() {
        if assigned[start] {
            continue;
        }
        // breadth-first closure under admissibility-preserving swaps
        let mut members = vec![orders[start].clone()];
        assigned[start] = true;
        let mut frontier = vec![orders[start].clone()];
        while let Some(cur) = frontier.pop() {
            for i in 0..cur.chain.len() - 1 {
                if !swappable(&cur.chain, i, k) {
                    continue;
                }
                let mut next = cur.clone();
                next.chain.swap(i, i + 1);
                if let Ok(idx) = orders.binary_search(&next) {
                    if !assigned[idx] {
                        assigned[idx] = true;
                        members.push(orders[idx].clone());
                        frontier.push(orders[idx].clone());
                    }
                }
            }
        }
        members.sort();
        classes.push(BruhatClass {
            representative: members[0].clone(),
            members,
        });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Class lookup for a chain already known to be admissible.
pub fn class_of<'a>(
    classes: &'a [BruhatClass],
    chain: &[Tuple],
) -> Option<&'a BruhatClass> {
    classes
        .iter()
        .find(|c| c.members.iter().any(|m| m.chain == chain))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(digits: &[u8]) -> Tuple {
        Tuple::new(digits.to_vec()).unwrap()
    }

    fn chain(parts: &[&[u8]]) -> Vec<Tuple> {
        parts.iter().map(|d| t(d)).collect()
    }

    #[test]
    fn subsets_c42() {
        let c = subsets(4, 2).unwrap();
        let want = chain(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert_eq!(c, want);
    }

    #[test]
    fn subsets_c43() {
        let c = subsets(4, 3).unwrap();
        let want = chain(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        assert_eq!(c, want);
    }

    #[test]
    fn subsets_full() {
        assert_eq!(subsets(3, 3).unwrap(), chain(&[&[1, 2, 3]]));
    }

    #[test]
    fn subsets_domain_errors() {
        assert!(matches!(subsets(4, 0), Err(BruhatError::Domain { .. })));
        assert!(matches!(subsets(4, 5), Err(BruhatError::Domain { .. })));
    }

    #[test]
    fn packet_facets_in_hat_order() {
        let ps = packets(4, 2).unwrap();
        assert_eq!(ps.len(), 4);
        // packet of (123): (23) < (13) < (12) in hat order
        assert_eq!(ps[0].parent, t(&[1, 2, 3]));
        assert_eq!(ps[0].facets, chain(&[&[2, 3], &[1, 3], &[1, 2]]));
        // packet of (234): (34) < (24) < (23)
        assert_eq!(ps[3].parent, t(&[2, 3, 4]));
        assert_eq!(ps[3].facets, chain(&[&[3, 4], &[2, 4], &[2, 3]]));
    }

    #[test]
    fn packet_k1() {
        let ps = packets(4, 1).unwrap();
        // packet of (12): facets (2), (1)
        assert_eq!(ps[0].parent, t(&[1, 2]));
        assert_eq!(ps[0].facets, chain(&[&[2], &[1]]));
    }

    #[test]
    fn admissible_examples() {
        let lex = chain(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(is_admissible(&lex, 4, 2).unwrap());
        // c4 c2 c5 c3 c1 c6
        let c42531 = chain(&[&[2, 3], &[1, 3], &[2, 4], &[1, 4], &[1, 2], &[3, 4]]);
        assert!(is_admissible(&c42531, 4, 2).unwrap());
        // (13)(12)(14)(23)(24)(34): packet of (123) appears as (13),(12),(23)
        let bad = chain(&[&[1, 3], &[1, 2], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(!is_admissible(&bad, 4, 2).unwrap());
    }

    #[test]
    fn admissible_rejects_non_permutation() {
        let dup = chain(&[&[1, 2], &[1, 2], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(matches!(
            is_admissible(&dup, 4, 2),
            Err(BruhatError::NotAPermutation { .. })
        ));
    }

    #[test]
    fn enumerate_31_gives_all_orders() {
        let a = enumerate_admissible(3, 1).unwrap();
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn enumerate_guard() {
        assert!(matches!(
            enumerate_admissible(9, 2),
            Err(BruhatError::Resource { .. })
        ));
        assert!(enumerate_admissible_with_guard(5, 2, 10).is_ok());
    }

    #[test]
    fn inversions_of_lex_and_reverse() {
        let a42 = enumerate_admissible(4, 2).unwrap();
        let lex = a42.iter().min().unwrap();
        assert!(inversion_set(lex).is_empty());
        let rev = lex.reversed();
        assert_eq!(inversion_set(&rev).len(), 4);
    }

    #[test]
    fn inversion_partition_under_reversal() {
        let all = subsets(4, 3).unwrap();
        for a in enumerate_admissible(4, 2).unwrap() {
            let mut inv: Vec<Tuple> = inversion_set(&a);
            let inv_rev = inversion_set(&a.reversed());
            assert!(inv.iter().all(|t| !inv_rev.contains(t)));
            inv.extend(inv_rev);
            inv.sort();
            assert_eq!(inv, all);
        }
    }

    #[test]
    fn descending_convention_is_the_complement() {
        for a in enumerate_admissible(4, 2).unwrap() {
            let asc = inversion_set_with(&a, InvConvention::Ascending);
            let desc = inversion_set_with(&a, InvConvention::Descending);
            assert_eq!(asc.len() + desc.len(), 4);
        }
    }

    #[test]
    fn reversal_closure() {
        for a in enumerate_admissible(4, 2).unwrap() {
            let rev = a.reversed();
            assert!(is_admissible(&rev.chain, 4, 2).unwrap());
        }
    }

    #[test]
    fn b31_is_six_singletons() {
        let classes = bruhat_classes(3, 1).unwrap();
        assert_eq!(classes.len(), 6);
        assert!(classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn b42_has_eight_classes() {
        let classes = bruhat_classes(4, 2).unwrap();
        assert_eq!(classes.len(), 8);
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        let a42 = enumerate_admissible(4, 2).unwrap();
        assert_eq!(total, a42.len());
    }

    #[test]
    fn lex_class_contains_disjoint_swap() {
        let classes = bruhat_classes(4, 2).unwrap();
        let lex = chain(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        let swapped = chain(&[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[2, 4], &[3, 4]]);
        let cls = class_of(&classes, &lex).unwrap();
        assert!(cls.members.iter().any(|m| m.chain == swapped));
    }

    #[test]
    fn determinism() {
        let a = bruhat_classes(4, 2).unwrap();
        let b = bruhat_classes(4, 2).unwrap();
        let ser = |cs: &[BruhatClass]| {
            cs.iter()
                .map(|c| c.representative.serialize())
                .collect::<Vec<_>>()
        };
        assert_eq!(ser(&a), ser(&b));
    }
}
