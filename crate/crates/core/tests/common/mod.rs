#![allow(dead_code)]

use moduli_core::trees::{ComplexStableTree, RealStableTree};
use moduli_core::Partition2;
use proptest::prelude::*;

pub fn ground(n: usize) -> u128 {
    // label l is bit l - 1
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Two splits of the same ground set fit on one tree iff one of the four
/// pairwise intersections of their blocks is empty.
pub fn splits_compatible(a: u128, b: u128, g: u128) -> bool {
    let (ac, bc) = (g & !a, g & !b);
    a & b == 0 || a & bc == 0 || ac & b == 0 || ac & bc == 0
}

fn is_divisor(m: u128, g: u128) -> bool {
    let s = (m & g).count_ones();
    s >= 2 && (g.count_ones() - s) >= 2
}

fn canonical(m: u128, g: u128) -> u128 {
    if m & 1 != 0 {
        m
    } else {
        g & !m
    }
}

/// Greedy tree: keep each candidate split compatible with the ones kept.
pub fn tree_from_candidates(n: usize, candidates: &[u128]) -> ComplexStableTree {
    let g = ground(n);
    let mut kept: Vec<u128> = Vec::new();
    for &c in candidates {
        let m = canonical(c & g, g);
        if is_divisor(m, g) && !kept.contains(&m) && kept.iter().all(|&k| splits_compatible(k, m, g)) {
            kept.push(m);
        }
    }
    let parts = kept.iter().map(|&m| Partition2::from_masks(g, m, true).unwrap());
    ComplexStableTree::from_partitions(n, parts).unwrap()
}

pub fn involute(m: u128, reals: usize, pairs: usize) -> u128 {
    let mut out = m & ground(reals);
    for p in 1..=pairs {
        let (a, b) = (reals + 2 * p - 2, reals + 2 * p - 1);
        if m & (1 << a) != 0 {
            out |= 1 << b;
        }
        if m & (1 << b) != 0 {
            out |= 1 << a;
        }
    }
    out
}

/// Greedy invariant tree: candidates are added together with their mirror.
pub fn real_tree_from_candidates(reals: usize, pairs: usize, candidates: &[u128]) -> RealStableTree {
    let n = reals + 2 * pairs;
    let g = ground(n);
    let mut kept: Vec<u128> = Vec::new();
    for &c in candidates {
        let m = canonical(c & g, g);
        let t = canonical(involute(m, reals, pairs), g);
        if !is_divisor(m, g) || kept.contains(&m) {
            continue;
        }
        let fits = |x: u128| kept.iter().all(|&k| splits_compatible(k, x, g));
        if fits(m) && fits(t) && splits_compatible(m, t, g) {
            kept.push(m);
            if t != m {
                kept.push(t);
            }
        }
    }
    let splits = kept.iter().map(|&m| Partition2::from_masks(g, m, true).unwrap()).collect();
    RealStableTree::from_splits(reals, pairs, splits).unwrap()
}

pub fn complex_tree(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ComplexStableTree> {
    (n, prop::collection::vec(any::<u128>(), 0..8)).prop_map(|(n, c)| tree_from_candidates(n, &c))
}

pub fn real_tree(reals: usize, pairs: usize) -> impl Strategy<Value = RealStableTree> {
    prop::collection::vec(any::<u128>(), 0..8).prop_map(move |c| real_tree_from_candidates(reals, pairs, &c))
}

/// Every stable tree on `n` labels, by brute force over sets of pairwise
/// compatible divisors.
pub fn all_trees(n: usize) -> Vec<ComplexStableTree> {
    let g = ground(n);
    let divisors: Vec<u128> = (1..=g)
        .step_by(2)
        .filter(|&m| is_divisor(m, g))
        .collect();
    let mut out = Vec::new();
    fn rec(start: usize, chosen: &mut Vec<u128>, divisors: &[u128], g: u128, n: usize, out: &mut Vec<ComplexStableTree>) {
        let parts = chosen.iter().map(|&m| Partition2::from_masks(g, m, true).unwrap());
        out.push(ComplexStableTree::from_partitions(n, parts).unwrap());
        for k in start..divisors.len() {
            if chosen.iter().all(|&c| splits_compatible(c, divisors[k], g)) {
                chosen.push(divisors[k]);
                rec(k + 1, chosen, divisors, g, n, out);
                chosen.pop();
            }
        }
    }
    rec(0, &mut Vec::new(), &divisors, g, n, &mut out);
    out
}
