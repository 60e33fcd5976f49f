use std::fmt;

use super::{check_split_set, graft, Graft, SplitSet, TreeGraph};
use crate::error::{Error, Result};
use crate::labels::{bit, full_mask, glue_label_maps, labels_of, popcount, Mask, Partition2, MAX_LABEL};

/// Dual graph of a stratum of the moduli space of `n`-pointed stable rational
/// curves, identified with its set of edge partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexStableTree {
    n: usize,
    splits: SplitSet,
}

impl ComplexStableTree {
    /// The open stratum: one vertex carrying every label.
    pub fn one_vertex(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Unstable(format!(
                "a single component needs at least 3 marked points, got {n}"
            )));
        }
        if n > MAX_LABEL {
            return Err(Error::Arity(format!("at most {MAX_LABEL} labels supported")));
        }
        Ok(ComplexStableTree {
            n,
            splits: SplitSet::new(),
        })
    }

    /// Tree with the given edge partitions, which must be pairwise compatible
    /// divisor partitions of `[n]`.
    pub fn from_partitions<I: IntoIterator<Item = Partition2>>(n: usize, parts: I) -> Result<Self> {
        let mut t = Self::one_vertex(n)?;
        for p in parts {
            if !t.splits.insert(p) {
                return Err(Error::MalformedTree(format!("edge {p} listed twice")));
            }
        }
        check_split_set(n, &t.splits)?;
        Ok(t)
    }

    pub(crate) fn from_splits_unchecked(n: usize, splits: SplitSet) -> Self {
        ComplexStableTree { n, splits }
    }

    /// Number of marked points.
    pub fn labels(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.splits.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.splits.len() + 1
    }

    /// One partition of `[n]` per edge.
    pub fn edge_partitions(&self) -> &SplitSet {
        &self.splits
    }

    /// Grafts `other` onto label `slot` of `self` along the last label of
    /// `other`, relabeling as in [`glue_label_maps`].
    ///
    /// `self` carries `k + 1` labels and `other` carries `l + 1`; the result
    /// carries `k + l`.
    pub fn glue(&self, slot: usize, other: &ComplexStableTree) -> Result<ComplexStableTree> {
        let (k, l) = (self.n - 1, other.n - 1);
        let (first, second) = glue_label_maps(k, l, slot)?;
        let host_map = |x: usize| first.apply(x).expect("non-node label");
        let guest_map = |x: usize| second.apply(x).expect("non-node label");
        let splits = graft(
            &self.splits,
            &host_map,
            &[Graft {
                host_label: slot,
                guest: &other.splits,
                guest_root: other.n,
                guest_map: &guest_map,
                guest_labels: other.n,
            }],
            k + l,
        )?;
        check_split_set(k + l, &splits)?;
        Ok(ComplexStableTree { n: k + l, splits })
    }

    /// Forgets every label outside `keep` and stabilizes; surviving labels are
    /// renumbered `1..=|keep|` in increasing order.
    pub fn forget_stabilize(&self, keep: Mask) -> Result<ComplexStableTree> {
        let ground = full_mask(self.n);
        if keep & !ground != 0 {
            return Err(Error::LabelOutOfRange {
                label: labels_of(keep & !ground).next().unwrap_or(0),
                size: self.n,
            });
        }
        let m = popcount(keep);
        if m < 3 {
            return Err(Error::Unstable(format!(
                "forgetting down to {m} labels leaves an unstable curve"
            )));
        }
        let rank: Vec<usize> = {
            let mut r = vec![0; self.n + 1];
            for (idx, l) in labels_of(keep).enumerate() {
                r[l] = idx + 1;
            }
            r
        };
        let compress = |mask: Mask| labels_of(mask).fold(0, |acc, l| acc | bit(rank[l]));
        let mut splits = SplitSet::new();
        for s in &self.splits {
            if let Some(r) = s.restrict_to(keep)? {
                splits.insert(Partition2::from_masks(full_mask(m), compress(r.first()), true)?);
            }
        }
        Ok(ComplexStableTree { n: m, splits })
    }

    /// Image under a permutation of the labels, given as `perm[l - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ComplexStableTree> {
        if perm.len() != self.n {
            return Err(Error::Arity("permutation length differs from label count".into()));
        }
        let mut seen = 0 as Mask;
        for &p in perm {
            if p == 0 || p > self.n || seen & bit(p) != 0 {
                return Err(Error::Arity("not a permutation".into()));
            }
            seen |= bit(p);
        }
        let ground = full_mask(self.n);
        let map = |m: Mask| labels_of(m).fold(0, |acc, l| acc | bit(perm[l - 1]));
        let splits = self
            .splits
            .iter()
            .map(|s| s.map_blocks(map, ground))
            .collect::<Result<SplitSet>>()?;
        Ok(ComplexStableTree { n: self.n, splits })
    }

    pub(crate) fn graph(&self) -> TreeGraph {
        TreeGraph::from_splits(self.n, &self.splits)
    }
}

impl fmt::Display for ComplexStableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}[", self.n)?;
        for (idx, s) in self.splits.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, j: &[usize]) -> Partition2 {
        Partition2::divisor(n, j).unwrap()
    }

    fn edges(t: &ComplexStableTree) -> Vec<Partition2> {
        t.edge_partitions().iter().copied().collect()
    }

    #[test]
    fn one_vertex_requires_three_points() {
        let t = ComplexStableTree::one_vertex(4).unwrap();
        assert_eq!(t.vertex_count(), 1);
        assert!(t.edge_partitions().is_empty());
        assert!(ComplexStableTree::one_vertex(2).is_err());
    }

    #[test]
    fn glue_examples() {
        let three = ComplexStableTree::one_vertex(3).unwrap();
        let t = three.glue(1, &three).unwrap();
        assert_eq!(edges(&t), vec![p(4, &[1, 2])]);

        let four = ComplexStableTree::one_vertex(4).unwrap();
        let t = four.glue(3, &three).unwrap();
        assert_eq!(edges(&t), vec![p(5, &[3, 4])]);
        assert_eq!(edges(&t)[0].to_string(), "{1,2,5|3,4}");

        assert!(three.glue(3, &three).is_err());
    }

    #[test]
    fn forget_examples() {
        let t = ComplexStableTree::from_partitions(5, [p(5, &[1, 2])]).unwrap();
        let keep = 0b1111;
        assert_eq!(edges(&t.forget_stabilize(keep).unwrap()), vec![p(4, &[1, 2])]);

        let t = ComplexStableTree::from_partitions(5, [p(5, &[1, 5])]).unwrap();
        let f = t.forget_stabilize(keep).unwrap();
        assert_eq!(f, ComplexStableTree::one_vertex(4).unwrap());

        assert_eq!(t.forget_stabilize(full_mask(5)).unwrap(), t);
        assert!(t.forget_stabilize(0b11).is_err());
    }

    #[test]
    fn chain_edge_partitions() {
        let t = ComplexStableTree::from_partitions(5, [p(5, &[1, 2]), p(5, &[3, 4])]).unwrap();
        let e = edges(&t);
        assert_eq!(e.len(), 2);
        assert!(e.contains(&"{1,2|3,4,5}".parse().unwrap()));
        assert!(e.contains(&"{3,4|1,2,5}".parse().unwrap()));
        let g = t.graph();
        // middle vertex holds label 5
        let mid = g.leaf_vertex[4];
        assert_eq!(g.edges.iter().filter(|(a, b)| *a == mid || *b == mid).count(), 2);
    }

    #[test]
    fn rejects_crossing_edges() {
        assert!(ComplexStableTree::from_partitions(4, [p(4, &[1, 2]), p(4, &[1, 3])]).is_err());
    }
}
