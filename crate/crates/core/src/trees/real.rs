use std::fmt;

use super::{check_split_set, graft, ComplexStableTree, Graft, SplitSet, TreeGraph};
use crate::error::{Error, Result};
use crate::labels::{bit, full_mask, labels_of, Mask, Partition2, MAX_LABEL};

/// A marked point of a real curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealLabel {
    /// The `r`-th real point.
    Real(usize),
    /// First point of the `p`-th conjugate pair.
    Plus(usize),
    /// Second point of the `p`-th conjugate pair.
    Minus(usize),
}

impl fmt::Display for RealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealLabel::Real(r) => write!(f, "{r}"),
            RealLabel::Plus(p) => write!(f, "{p}+"),
            RealLabel::Minus(p) => write!(f, "{p}-"),
        }
    }
}

/// Relabeling convention of the real-real gluing.
///
/// Real labels follow the complex rule: the guest's real points other than its
/// last one take the positions `i..i+k'-1` and the host's later real points
/// move up by `k' - 1`. Pair labels are concatenated, host pairs first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealGlueConvention {
    /// Guest real label identified with the host slot, counted from the end.
    pub guest_node_from_end: usize,
    /// Offset added to guest pair indices, expressed as "host pair count".
    pub guest_pairs_follow_host_pairs: bool,
}

pub const REAL_GLUE_CONVENTION: RealGlueConvention = RealGlueConvention {
    guest_node_from_end: 0,
    guest_pairs_follow_host_pairs: true,
};

/// Dual graph of a stratum of real curves with `k` real points and `l`
/// conjugate pairs.
///
/// Stored as the split set of the underlying complex tree over the doubled
/// label set: real point `r` is label `r`, and pair `p` contributes labels
/// `k + 2p - 1` (`p+`) and `k + 2p` (`p-`). The split set is invariant under
/// the label involution, which induces the tree involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealStableTree {
    reals: usize,
    pairs: usize,
    splits: SplitSet,
}

impl RealStableTree {
    pub fn one_vertex(reals: usize, pairs: usize) -> Result<Self> {
        let n = reals + 2 * pairs;
        if n < 3 {
            return Err(Error::Unstable(format!(
                "a real component with {reals} real points and {pairs} pairs is unstable"
            )));
        }
        if n > MAX_LABEL {
            return Err(Error::Arity(format!("at most {MAX_LABEL} doubled labels supported")));
        }
        Ok(RealStableTree {
            reals,
            pairs,
            splits: SplitSet::new(),
        })
    }

    /// Tree from edge splits over the doubled label set.
    pub fn from_splits(reals: usize, pairs: usize, splits: SplitSet) -> Result<Self> {
        let t = RealStableTree {
            splits,
            ..Self::one_vertex(reals, pairs)?
        };
        check_split_set(t.doubled_labels(), &t.splits)?;
        for s in &t.splits {
            let img = t.involute(s);
            if !t.splits.contains(&img) {
                return Err(Error::MalformedTree(format!(
                    "edge set is not invariant under the involution ({} has no mirror)",
                    t.format_split(s)
                )));
            }
        }
        Ok(t)
    }

    pub fn reals(&self) -> usize {
        self.reals
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn doubled_labels(&self) -> usize {
        self.reals + 2 * self.pairs
    }

    pub fn edge_count(&self) -> usize {
        self.splits.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.splits.len() + 1
    }

    pub fn splits(&self) -> &SplitSet {
        &self.splits
    }

    /// Position of a marked point in the doubled label set.
    pub fn index_of(&self, label: RealLabel) -> Result<usize> {
        match label {
            RealLabel::Real(r) if (1..=self.reals).contains(&r) => Ok(r),
            RealLabel::Plus(p) if (1..=self.pairs).contains(&p) => Ok(self.reals + 2 * p - 1),
            RealLabel::Minus(p) if (1..=self.pairs).contains(&p) => Ok(self.reals + 2 * p),
            _ => Err(Error::MalformedTree(format!("no marked point {label} here"))),
        }
    }

    pub fn label_at(&self, index: usize) -> RealLabel {
        debug_assert!((1..=self.doubled_labels()).contains(&index));
        if index <= self.reals {
            RealLabel::Real(index)
        } else {
            let off = index - self.reals;
            if off % 2 == 1 {
                RealLabel::Plus(off.div_ceil(2))
            } else {
                RealLabel::Minus(off / 2)
            }
        }
    }

    /// Swaps `p+` and `p-` for every pair, fixing real labels.
    pub fn involute_mask(&self, m: Mask) -> Mask {
        let mut plus = 0;
        for p in 1..=self.pairs {
            plus |= bit(self.reals + 2 * p - 1);
        }
        let minus = plus << 1;
        let real = full_mask(self.reals);
        (m & real) | ((m & plus) << 1) | ((m & minus) >> 1)
    }

    fn involute(&self, s: &Partition2) -> Partition2 {
        Partition2::from_masks(s.ground(), self.involute_mask(s.first()), true)
            .expect("involution preserves block sizes")
    }

    /// Splits of edges swapped by nothing: each is its own mirror.
    pub fn fixed_edge_count(&self) -> usize {
        self.splits.iter().filter(|s| self.involute(s) == **s).count()
    }

    /// Renumbers the conjugate pairs: pair `p` becomes `perm[p - 1]`.
    pub fn permute_pairs(&self, perm: &[usize]) -> Result<RealStableTree> {
        let mut seen = vec![false; self.pairs];
        let bijective = perm.len() == self.pairs
            && perm
                .iter()
                .all(|&q| (1..=self.pairs).contains(&q) && !std::mem::replace(&mut seen[q - 1], true));
        if !bijective {
            return Err(Error::Arity("not a permutation of the conjugate pairs".into()));
        }
        let f = self.map_pairs_into(self.reals, |r| r, |p| perm[p - 1]);
        let ground = full_mask(self.doubled_labels());
        let splits = self
            .splits
            .iter()
            .map(|s| Partition2::from_masks(ground, labels_of(s.first()).fold(0, |m, l| m | bit(f(l))), true))
            .collect::<Result<SplitSet>>()?;
        Ok(RealStableTree {
            splits,
            ..self.clone()
        })
    }

    fn map_pairs_into<'a, R, P>(&'a self, target_reals: usize, real: R, pair: P) -> impl Fn(usize) -> usize + 'a
    where
        R: Fn(usize) -> usize + 'a,
        P: Fn(usize) -> usize + 'a,
    {
        move |idx| match self.label_at(idx) {
            RealLabel::Real(r) => real(r),
            RealLabel::Plus(p) => target_reals + 2 * pair(p) - 1,
            RealLabel::Minus(p) => target_reals + 2 * pair(p),
        }
    }

    /// Identifies real point `slot` of `self` with the last real point of
    /// `other` (see [`REAL_GLUE_CONVENTION`]).
    ///
    /// With `self` of type `(k+1, l)` and `other` of type `(k'+1, l')` the
    /// result has type `(k+k', l+l')`; both `k+l` and `k'+l'` must be at
    /// least 2.
    pub fn glue_real(&self, slot: usize, other: &RealStableTree) -> Result<RealStableTree> {
        if self.reals == 0 || other.reals == 0 {
            return Err(Error::Arity("real gluing needs a real point on both factors".into()));
        }
        let (k, l) = (self.reals - 1, self.pairs);
        let (k2, l2) = (other.reals - 1, other.pairs);
        if k + l < 2 || k2 + l2 < 2 {
            return Err(Error::Arity(format!(
                "real gluing needs k+l >= 2 and k'+l' >= 2, got ({k},{l}) and ({k2},{l2})"
            )));
        }
        if slot == 0 || slot > k + 1 {
            return Err(Error::SlotOutOfRange { slot, max: k + 1 });
        }
        let (reals, pairs) = (k + k2, l + l2);
        let host_map = self.map_pairs_into(
            reals,
            |r| if r < slot { r } else { r + k2 - 1 },
            |p| p,
        );
        let guest_map = other.map_pairs_into(reals, |r| r + slot - 1, |p| p + l);
        let splits = graft(
            &self.splits,
            &host_map,
            &[Graft {
                host_label: slot,
                guest: &other.splits,
                guest_root: other.reals,
                guest_map: &guest_map,
                guest_labels: other.doubled_labels(),
            }],
            reals + 2 * pairs,
        )?;
        RealStableTree::from_splits(reals, pairs, splits)
    }

    /// Attaches `other` at `slot+` and its conjugate at `slot-`.
    ///
    /// The complex labels `1..=l'` of `other` become the pairs
    /// `slot..slot+l'-1` (its labels turning into `+` points) and the later
    /// pairs of `self` move up by `l' - 1`.
    fn graft_at_pair(&self, slot: usize, other: &ComplexStableTree) -> Result<RealStableTree> {
        let l2 = other.labels() - 1;
        if l2 < 2 {
            return Err(Error::Arity(format!(
                "the complex factor needs at least 3 marked points, got {}",
                other.labels()
            )));
        }
        if slot == 0 || slot > self.pairs {
            return Err(Error::SlotOutOfRange { slot, max: self.pairs });
        }
        let (reals, pairs) = (self.reals, self.pairs + l2 - 1);
        let host_map = self.map_pairs_into(
            reals,
            |r| r,
            |p| if p < slot { p } else { p + l2 - 1 },
        );
        let plus = |x: usize| reals + 2 * (slot + x - 1) - 1;
        let minus = |x: usize| reals + 2 * (slot + x - 1);
        let splits = graft(
            &self.splits,
            &host_map,
            &[
                Graft {
                    host_label: self.index_of(RealLabel::Plus(slot))?,
                    guest: other.edge_partitions(),
                    guest_root: other.labels(),
                    guest_map: &plus,
                    guest_labels: other.labels(),
                },
                Graft {
                    host_label: self.index_of(RealLabel::Minus(slot))?,
                    guest: other.edge_partitions(),
                    guest_root: other.labels(),
                    guest_map: &minus,
                    guest_labels: other.labels(),
                },
            ],
            reals + 2 * pairs,
        )?;
        RealStableTree::from_splits(reals, pairs, splits)
    }

    /// Complex gluing at a conjugate pair of a tree with real points.
    ///
    /// `self` has type `(k+1, l)` with `k + l >= 2`, `slot` ranges over `[l]`,
    /// and `other` carries `l' + 1 >= 3` labels; the result has type
    /// `(k+1, l+l'-1)`.
    pub fn glue_complex(&self, slot: usize, other: &ComplexStableTree) -> Result<RealStableTree> {
        if self.reals == 0 || self.reals - 1 + self.pairs < 2 {
            return Err(Error::Arity(format!(
                "complex gluing at a pair needs type (k+1, l) with k+l >= 2, got ({}, {})",
                self.reals, self.pairs
            )));
        }
        self.graft_at_pair(slot, other)
    }

    /// Complex gluing on a curve with conjugate pairs only, the last pair
    /// being the output: `self` has type `(0, k+1)` and `slot` ranges over `[k]`.
    pub fn glue_conjugate(&self, slot: usize, other: &ComplexStableTree) -> Result<RealStableTree> {
        if self.reals != 0 {
            return Err(Error::Arity("expected a curve without real points".into()));
        }
        if slot == 0 || slot >= self.pairs {
            return Err(Error::SlotOutOfRange {
                slot,
                max: self.pairs.saturating_sub(1),
            });
        }
        self.graft_at_pair(slot, other)
    }

    pub(crate) fn graph(&self) -> TreeGraph {
        TreeGraph::from_splits(self.doubled_labels(), &self.splits)
    }

    /// Vertex involution of [`graph`](Self::graph).
    pub(crate) fn vertex_involution(&self, g: &TreeGraph) -> Vec<usize> {
        g.induced_vertex_map(|m| self.involute_mask(m))
            .expect("split set is involution invariant")
    }

    /// Labels carried by each vertex of the explicit tree, with the vertex
    /// involution.
    pub fn vertex_labels(&self) -> (Vec<Vec<RealLabel>>, Vec<usize>) {
        let g = self.graph();
        let inv = self.vertex_involution(&g);
        let mut out = vec![Vec::new(); g.vertex_count];
        for (idx, &v) in g.leaf_vertex.iter().enumerate() {
            out[v].push(self.label_at(idx + 1));
        }
        (out, inv)
    }

    pub(crate) fn format_split(&self, s: &Partition2) -> String {
        let block = |m: Mask| {
            labels_of(m)
                .map(|i| self.label_at(i).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{{{}|{}}}", block(s.first()), block(s.second()))
    }
}

impl fmt::Display for RealStableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{},{}[", self.reals, self.pairs)?;
        for (idx, s) in self.splits.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&self.format_split(s))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RealLabel::*;

    fn sorted(mut v: Vec<RealLabel>) -> Vec<RealLabel> {
        v.sort();
        v
    }

    #[test]
    fn one_vertex_real() {
        let t = RealStableTree::one_vertex(0, 3).unwrap();
        let (labels, inv) = t.vertex_labels();
        assert_eq!(inv, vec![0]);
        assert_eq!(labels[0].len(), 6);
        assert!(RealStableTree::one_vertex(1, 0).is_err());
        assert!(RealStableTree::one_vertex(1, 1).is_ok());
    }

    #[test]
    fn figure_three_placement() {
        let host = RealStableTree::one_vertex(0, 3).unwrap();
        let guest = ComplexStableTree::one_vertex(4).unwrap();
        let t = host.glue_conjugate(2, &guest).unwrap();
        assert_eq!((t.reals(), t.pairs()), (0, 5));
        let (labels, inv) = t.vertex_labels();
        assert_eq!(labels.len(), 3);
        let fixed: Vec<_> = (0..3).filter(|&v| inv[v] == v).collect();
        assert_eq!(fixed.len(), 1);
        assert_eq!(
            sorted(labels[fixed[0]].clone()),
            vec![Plus(1), Plus(5), Minus(1), Minus(5)]
        );
        let swapped: Vec<_> = (0..3).filter(|&v| inv[v] != v).collect();
        let plus_side = swapped
            .iter()
            .copied()
            .find(|&v| labels[v].contains(&Plus(2)))
            .unwrap();
        assert_eq!(sorted(labels[plus_side].clone()), vec![Plus(2), Plus(3), Plus(4)]);
        let minus_side = inv[plus_side];
        assert_eq!(sorted(labels[minus_side].clone()), vec![Minus(2), Minus(3), Minus(4)]);
        assert_eq!(t.fixed_edge_count(), 0);
    }

    #[test]
    fn second_pair_example() {
        let host = RealStableTree::one_vertex(0, 2).unwrap();
        let guest = ComplexStableTree::one_vertex(3).unwrap();
        let t = host.glue_conjugate(1, &guest).unwrap();
        let (labels, inv) = t.vertex_labels();
        let fixed = (0..labels.len()).find(|&v| inv[v] == v).unwrap();
        assert_eq!(sorted(labels[fixed].clone()), vec![Plus(3), Minus(3)]);
        assert!(host.glue_conjugate(2, &guest).is_err());
    }

    #[test]
    fn real_real_examples() {
        let a = RealStableTree::one_vertex(3, 0).unwrap();
        let t = a.glue_real(1, &a).unwrap();
        assert_eq!((t.reals(), t.pairs()), (4, 0));
        let (labels, inv) = t.vertex_labels();
        assert!(inv.iter().enumerate().all(|(v, &w)| v == w));
        let host_side = (0..2).find(|&v| labels[v].contains(&Real(4))).unwrap();
        assert_eq!(sorted(labels[host_side].clone()), vec![Real(3), Real(4)]);
        assert_eq!(sorted(labels[1 - host_side].clone()), vec![Real(1), Real(2)]);

        let b = RealStableTree::one_vertex(2, 1).unwrap();
        let t = b.glue_real(2, &b).unwrap();
        assert_eq!((t.reals(), t.pairs()), (2, 2));
        let (labels, _) = t.vertex_labels();
        let guest_side = (0..2).find(|&v| labels[v].contains(&Real(2))).unwrap();
        // guest real 1 lands at slot 2; its pair becomes pair 2
        assert_eq!(sorted(labels[guest_side].clone()), vec![Real(2), Plus(2), Minus(2)]);
    }

    #[test]
    fn rejects_non_invariant_edges() {
        let t = RealStableTree::one_vertex(0, 3).unwrap();
        let n = t.doubled_labels();
        // {1+,2+ | rest} without its mirror {1-,2- | rest}
        let s = Partition2::from_masks(full_mask(n), bit(1) | bit(3), true).unwrap();
        assert!(RealStableTree::from_splits(0, 3, [s].into_iter().collect()).is_err());
    }
}
