//! Brute-force oracle for `A(4,2)` and the class structure of `B(4,2)`.
//!
//! The oracle filters all 720 orders of `C(4,2)` with a direct packet check
//! written independently of the library's pruned backtracking search.

use tetreq_core::bruhat::{
    bruhat_classes, class_of, enumerate_admissible, inversion_set, is_admissible,
    serialize_chain, subsets, Tuple,
};
use tetreq_core::golden;

fn tuple(digits: &[u8]) -> Tuple {
    Tuple::new(digits.to_vec()).unwrap()
}

/// The six pairs in lexicographic order, as raw digit arrays.
const PAIRS: [[u8; 2]; 6] = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];

/// Direct packet check: for every 3-subset `{a,b,c}` of `{1,2,3,4}`, the
/// chain positions of `(b,c)`, `(a,c)`, `(a,b)` are monotone.
fn oracle_admissible(chain: &[[u8; 2]]) -> bool {
    let pos = |p: [u8; 2]| chain.iter().position(|&q| q == p).unwrap();
    let mut ok = true;
    for a in 1..=4u8 {
        for b in a + 1..=4 {
            for c in b + 1..=4 {
                let i = pos([b, c]);
                let j = pos([a, c]);
                let k = pos([a, b]);
                ok &= (i < j && j < k) || (i > j && j > k);
            }
        }
    }
    ok
}

fn oracle_enumerate() -> Vec<Vec<[u8; 2]>> {
    let mut found = Vec::new();
    let mut perm = PAIRS;
    // plain lexicographic permutation generation
    fn rec(perm: &mut [[u8; 2]; 6], at: usize, found: &mut Vec<Vec<[u8; 2]>>) {
        if at == 6 {
            if oracle_admissible(perm) {
                found.push(perm.to_vec());
            }
            return;
        }
        for i in at..6 {
            perm.swap(at, i);
            rec(perm, at + 1, found);
            perm.swap(at, i);
        }
    }
    rec(&mut perm, 0, &mut found);
    found.sort();
    found
}

#[test]
fn enumeration_agrees_with_brute_force() {
    let oracle = oracle_enumerate();
    let fast = enumerate_admissible(4, 2).unwrap();
    let fast_raw: Vec<Vec<[u8; 2]>> = fast
        .iter()
        .map(|a| {
            a.chain
                .iter()
                .map(|t| [t.indices()[0], t.indices()[1]])
                .collect()
        })
        .collect();
    assert_eq!(fast_raw, oracle);
    assert_eq!(oracle.len(), 16);
}

#[test]
fn is_admissible_agrees_with_oracle_on_all_orders() {
    let mut perm = PAIRS;
    fn rec(perm: &mut [[u8; 2]; 6], at: usize, check: &mut dyn FnMut(&[[u8; 2]])) {
        if at == 6 {
            check(perm);
            return;
        }
        for i in at..6 {
            perm.swap(at, i);
            rec(perm, at + 1, check);
            perm.swap(at, i);
        }
    }
    rec(&mut perm, 0, &mut |chain| {
        let tuples: Vec<Tuple> = chain.iter().map(|p| tuple(p)).collect();
        assert_eq!(
            is_admissible(&tuples, 4, 2).unwrap(),
            oracle_admissible(chain),
            "disagreement on {}",
            serialize_chain(&tuples)
        );
    });
}

#[test]
fn enumeration_contains_the_displayed_chains() {
    // three members of A(4,2) quoted in the display:
    // c1c2c3c4c5c6, c4c2c5c3c1c6, c6c1c3c5c2c4
    let a42 = enumerate_admissible(4, 2).unwrap();
    for chain in [
        "12.13.14.23.24.34",
        "23.13.24.14.12.34",
        "34.12.14.24.13.23",
    ] {
        assert!(
            a42.iter().any(|a| a.serialize() == chain),
            "chain {chain} missing from A(4,2)"
        );
    }
}

#[test]
fn counts_match_the_display() {
    assert_eq!(subsets(4, 2).unwrap().len(), 6);
    assert_eq!(subsets(4, 3).unwrap().len(), 4);
    assert_eq!(bruhat_classes(4, 2).unwrap().len(), 8);
}

#[test]
fn displayed_representatives_form_a_transversal() {
    // the eight displayed chains each lie in a distinct class, together
    // covering all of B(4,2)
    let classes = bruhat_classes(4, 2).unwrap();
    let mut hit = vec![false; classes.len()];
    for line in golden::BRUHAT_B42.lines() {
        let chain: Vec<Tuple> = line
            .split('.')
            .map(|t| {
                let b = t.as_bytes();
                tuple(&[b[0] - b'0', b[1] - b'0'])
            })
            .collect();
        assert!(is_admissible(&chain, 4, 2).unwrap(), "displayed chain {line} not admissible");
        let idx = classes
            .iter()
            .position(|c| c.members.iter().any(|m| m.chain == chain))
            .unwrap_or_else(|| panic!("displayed chain {line} not in any class"));
        assert!(!hit[idx], "displayed chain {line} repeats a class");
        hit[idx] = true;
    }
    assert!(hit.iter().all(|&h| h));
}

#[test]
fn canonical_representatives_are_stable() {
    let classes = bruhat_classes(4, 2).unwrap();
    let reps: Vec<String> = classes.iter().map(|c| c.representative.serialize()).collect();
    assert_eq!(
        reps,
        [
            "12.13.14.23.24.34",
            "12.13.14.34.24.23",
            "12.34.14.13.24.23",
            "23.13.12.14.24.34",
            "23.13.24.14.12.34",
            "23.24.34.14.13.12",
            "34.24.14.12.13.23",
            "34.24.14.23.13.12",
        ]
    );
}

#[test]
fn class_sizes_partition_a42() {
    let classes = bruhat_classes(4, 2).unwrap();
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 1, 1, 1, 2, 2, 4, 4]);
    let total: usize = classes.iter().map(|c| c.members.len()).sum();
    assert_eq!(total, enumerate_admissible(4, 2).unwrap().len());
}

#[test]
fn equivalence_replay_soundness() {
    // every member is reachable from the representative by admissibility-
    // preserving swaps of adjacent disjoint entries
    let classes = bruhat_classes(4, 2).unwrap();
    for class in &classes {
        let mut reached = vec![class.representative.chain.clone()];
        let mut frontier = vec![class.representative.chain.clone()];
        while let Some(cur) = frontier.pop() {
            for i in 0..5 {
                let a = &cur[i];
                let b = &cur[i + 1];
                let disjoint = a.indices().iter().all(|x| !b.indices().contains(x));
                if !disjoint {
                    continue;
                }
                let mut next = cur.clone();
                next.swap(i, i + 1);
                assert!(is_admissible(&next, 4, 2).unwrap());
                if !reached.contains(&next) {
                    reached.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        assert_eq!(reached.len(), class.members.len());
        for m in &class.members {
            assert!(reached.contains(&m.chain));
        }
    }
}

#[test]
fn inversion_sets_observed_constant_on_classes() {
    // an empirical observation, not a guarantee the library asserts:
    // swapping disjoint adjacent entries turns out not to change Inv
    let classes = bruhat_classes(4, 2).unwrap();
    for class in &classes {
        let base = inversion_set(&class.representative);
        for m in &class.members {
            assert_eq!(inversion_set(m), base);
        }
    }
}

#[test]
fn inversion_sizes_over_a42() {
    // |Inv| takes every value 0..=4 over A(4,2), with the lex chain at 0
    let a42 = enumerate_admissible(4, 2).unwrap();
    let mut sizes: Vec<usize> = a42.iter().map(|a| inversion_set(a).len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes.first(), Some(&0));
    assert_eq!(sizes.last(), Some(&4));
    let lookup = class_of(&bruhat_classes(4, 2).unwrap(), &a42[0].chain).is_some();
    assert!(lookup);
}
