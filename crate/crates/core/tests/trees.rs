mod common;

use std::collections::BTreeSet;

use common::*;
use moduli_core::labels::{bit, full_mask, labels_of};
use moduli_core::trees::{parse_tree, AnyTree};
use moduli_core::{glue_label_maps, ComplexStableTree, Partition2, RealStableTree};
use proptest::prelude::*;

fn transported(t: &ComplexStableTree, map: &moduli_core::LabelMap) -> BTreeSet<Partition2> {
    let g = full_mask(map.target_arity());
    t.edge_partitions()
        .iter()
        .map(|p| {
            let away = if p.first() & bit(map.node()) == 0 { p.first() } else { p.second() };
            Partition2::from_masks(g, map.map_mask(away), true).unwrap()
        })
        .collect()
}

#[test]
fn strata_counts_of_small_spaces() {
    let counts: Vec<usize> = (3..=6).map(|n| all_trees(n).len()).collect();
    assert_eq!(counts, vec![1, 4, 26, 236]);
}

#[test]
fn pairwise_compatibility_matches_set_oracle() {
    let n = 6;
    let g = ground(n);
    let divisors: Vec<Partition2> = moduli_core::presentations::boundary_partitions(n).unwrap();
    for p in &divisors {
        for q in divisors.iter().filter(|q| *q != p) {
            let expect = splits_compatible(p.first(), q.first(), g);
            let built = ComplexStableTree::from_partitions(n, [*p, *q]).is_ok();
            assert_eq!(built, expect, "{p} {q}");
        }
        assert!(ComplexStableTree::from_partitions(n, [*p, *p]).is_err());
    }
}

proptest! {
    #[test]
    fn glue_adds_exactly_the_node_edge(x in complex_tree(3..=6), y in complex_tree(3..=6), i in 1usize..6) {
        let (k, l) = (x.labels() - 1, y.labels() - 1);
        let i = 1 + (i - 1) % k;
        let glued = x.glue(i, &y).unwrap();
        let (m1, m2) = glue_label_maps(k, l, i).unwrap();
        let mut expect = transported(&x, &m1);
        expect.extend(transported(&y, &m2));
        let node_block = (i..i + l).fold(0, |m, a| m | bit(a));
        expect.insert(Partition2::from_masks(full_mask(k + l), node_block, true).unwrap());
        prop_assert_eq!(glued.edge_partitions(), &expect);
        prop_assert_eq!(glued.edge_count(), x.edge_count() + y.edge_count() + 1);
    }

    #[test]
    fn sequential_gluing_is_associative(
        x in complex_tree(3..=5), y in complex_tree(3..=5), z in complex_tree(3..=5),
        i in 1usize..5, j in 1usize..5,
    ) {
        let i = 1 + (i - 1) % (x.labels() - 1);
        let j = 1 + (j - 1) % (y.labels() - 1);
        let lhs = x.glue(i, &y.glue(j, &z).unwrap()).unwrap();
        let rhs = x.glue(i, &y).unwrap().glue(i + j - 1, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parallel_gluing_commutes(
        x in complex_tree(4..=6), y in complex_tree(3..=5), z in complex_tree(3..=5),
        a in 1usize..6, b in 1usize..6,
    ) {
        let k = x.labels() - 1;
        let (i, j) = {
            let (a, b) = (1 + (a - 1) % k, 1 + (b - 1) % k);
            if a == b { (1, k) } else { (a.min(b), a.max(b)) }
        };
        let l = y.labels() - 1;
        let lhs = x.glue(i, &y).unwrap().glue(j + l - 1, &z).unwrap();
        let rhs = x.glue(j, &z).unwrap().glue(i, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn forgetting_in_stages_is_forgetting_once(t in complex_tree(5..=8), a in any::<u128>(), b in any::<u128>()) {
        let n = t.labels();
        let outer = (a & full_mask(n)) | bit(1) | bit(2) | bit(3) | bit(4);
        let inner = (outer & b) | bit(1) | bit(2) | bit(3);
        let once = t.forget_stabilize(inner).unwrap();
        let position: Vec<usize> = labels_of(outer).collect();
        let inner_in_outer = labels_of(inner)
            .map(|l| position.iter().position(|&p| p == l).unwrap() + 1)
            .fold(0, |m, r| m | bit(r));
        let staged = t.forget_stabilize(outer).unwrap().forget_stabilize(inner_in_outer).unwrap();
        prop_assert_eq!(once, staged);
    }

    #[test]
    fn forgetting_nothing_is_identity(t in complex_tree(3..=8)) {
        prop_assert_eq!(t.forget_stabilize(full_mask(t.labels())).unwrap(), t);
    }

    #[test]
    fn relabeling_round_trips(t in complex_tree(3..=7), rot in 0usize..7) {
        let n = t.labels();
        let perm: Vec<usize> = (0..n).map(|l| (l + rot) % n + 1).collect();
        let mut inverse = vec![0; n];
        for (l, &p) in perm.iter().enumerate() {
            inverse[p - 1] = l + 1;
        }
        prop_assert_eq!(t.relabel(&perm).unwrap().relabel(&inverse).unwrap(), t);
    }

    #[test]
    fn complex_json_round_trips(t in complex_tree(3..=9)) {
        let text = serde_json::to_string(&t.to_json()).unwrap();
        prop_assert_eq!(parse_tree(&text).unwrap(), AnyTree::Complex(t));
    }

    #[test]
    fn real_json_round_trips(reals in 0usize..4, pairs in 1usize..4, c in prop::collection::vec(any::<u128>(), 0..8)) {
        let reals = if reals + 2 * pairs < 3 { 1 } else { reals };
        let t = real_tree_from_candidates(reals, pairs, &c);
        let text = serde_json::to_string(&t.to_json()).unwrap();
        prop_assert_eq!(parse_tree(&text).unwrap(), AnyTree::Real(t));
    }

    #[test]
    fn simultaneous_gluing_matches_iterated(
        x in complex_tree(4..=5),
        ys in prop::collection::vec(prop::option::of(complex_tree(3..=5)), 4),
    ) {
        let k = x.labels() - 1;
        let guests: Vec<Option<&ComplexStableTree>> = ys.iter().take(k).map(|g| g.as_ref()).collect();
        let mut iterated = x.clone();
        for (s, g) in guests.iter().enumerate().rev() {
            if let Some(g) = g {
                iterated = iterated.glue(s + 1, g).unwrap();
            }
        }
        prop_assert_eq!(x.glue_all(&guests).unwrap(), iterated);
    }

    #[test]
    fn real_gluing_is_associative(
        x in real_tree(3, 1), y in real_tree(3, 1), z in real_tree(2, 1),
        i in 1usize..3, j in 1usize..3,
    ) {
        // y ∘_j z lands on y's real point j; x receives it at real point i
        let lhs = x.glue_real(i, &y.glue_real(j, &z).unwrap()).unwrap();
        let rhs = x.glue_real(i, &y).unwrap().glue_real(i + j - 1, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn simultaneous_real_gluing_matches_iterated(
        x in real_tree(3, 1),
        y in prop::option::of(real_tree(3, 1)),
        z in prop::option::of(real_tree(2, 2)),
    ) {
        let guests = [y.as_ref(), z.as_ref()];
        let mut iterated = x.clone();
        for (s, g) in guests.iter().enumerate().rev() {
            if let Some(g) = g {
                iterated = iterated.glue_real(s + 1, g).unwrap();
            }
        }
        prop_assert_eq!(x.glue_all_real(&guests).unwrap(), iterated);
    }

    #[test]
    fn pair_gluing_keeps_the_tree_invariant(x in real_tree(2, 2), y in complex_tree(3..=5), slot in 1usize..=2) {
        let glued = x.glue_complex(slot, &y).unwrap();
        prop_assert_eq!(glued.pairs(), 2 + y.labels() - 2);
        // two mirrored copies of the node edge plus the copies of y's edges
        prop_assert_eq!(glued.edge_count(), x.edge_count() + 2 * (y.edge_count() + 1));
        let _ = RealStableTree::from_splits(glued.reals(), glued.pairs(), glued.splits().clone()).unwrap();
    }
}
