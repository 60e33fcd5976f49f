//! Dual graphs of boundary strata.
//!
//! A stable tree is stored as the set of bipartitions of its leaf labels cut
//! out by its edges. Trees with every vertex of valence at least three are
//! determined by this split set, so equality of split sets is equality up to
//! label-preserving isomorphism, and the split set doubles as the canonical
//! form. Real trees use the same encoding over a doubled label set (see
//! [`real`]); the involution is the one induced by swapping `+`/`-` labels.

mod complex;
mod multi;
pub mod json;
mod real;

use std::collections::{BTreeSet, HashMap};

pub use complex::ComplexStableTree;
pub use json::{parse_tree, AnyTree, TreeJson};
pub use real::{RealLabel, RealStableTree, REAL_GLUE_CONVENTION};

use crate::error::{Error, Result};
use crate::labels::{bit, full_mask, labels_of, popcount, Mask, Partition2};

pub(crate) type SplitSet = BTreeSet<Partition2>;

/// A guest tree attached at one label of the host.
pub(crate) struct Graft<'a> {
    /// Host label replaced by the guest.
    pub host_label: usize,
    /// Guest edge splits; empty for a single-vertex guest.
    pub guest: &'a SplitSet,
    /// Guest label that becomes the node.
    pub guest_root: usize,
    /// Images of the guest labels other than `guest_root`.
    pub guest_map: &'a dyn Fn(usize) -> usize,
    /// Number of guest labels, root included.
    pub guest_labels: usize,
}

/// Grafts guests onto the host, producing the split set over `[target]`.
///
/// Host labels not listed as graft sites are relabeled by `host_map`. A new
/// edge is created at each site whose guest contributes at least two labels.
pub(crate) fn graft(
    host: &SplitSet,
    host_map: &dyn Fn(usize) -> usize,
    grafts: &[Graft<'_>],
    target: usize,
) -> Result<SplitSet> {
    let ground = full_mask(target);
    let sites: Mask = grafts.iter().fold(0, |m, g| m | bit(g.host_label));
    let images: Vec<Mask> = grafts
        .iter()
        .map(|g| {
            (1..=g.guest_labels)
                .filter(|&l| l != g.guest_root)
                .fold(0, |m, l| m | bit((g.guest_map)(l)))
        })
        .collect();

    let host_image = |side: Mask| -> Mask {
        let mut out = 0;
        for l in labels_of(side & !sites) {
            out |= bit(host_map(l));
        }
        for (g, img) in grafts.iter().zip(&images) {
            if side & bit(g.host_label) != 0 {
                out |= img;
            }
        }
        out
    };

    let mut out = SplitSet::new();
    for s in host {
        out.insert(Partition2::from_masks(ground, host_image(s.first()), true)?);
    }
    for (g, img) in grafts.iter().zip(&images) {
        for s in g.guest {
            let away = if s.first() & bit(g.guest_root) != 0 {
                s.second()
            } else {
                s.first()
            };
            let mapped = labels_of(away).fold(0, |m, l| m | bit((g.guest_map)(l)));
            out.insert(Partition2::from_masks(ground, mapped, true)?);
        }
        if popcount(*img) >= 2 && popcount(ground & !img) >= 2 {
            out.insert(Partition2::from_masks(ground, *img, true)?);
        }
    }
    Ok(out)
}

/// Checks that a split set describes a stable tree over `[n]`.
pub(crate) fn check_split_set(n: usize, splits: &SplitSet) -> Result<()> {
    let ground = full_mask(n);
    for s in splits {
        if s.ground() != ground {
            return Err(Error::MalformedTree(format!(
                "split {s} is not over the label set [{n}]"
            )));
        }
        if !s.is_divisor() {
            return Err(Error::Unstable(format!("edge split {s} has a block of size < 2")));
        }
    }
    let v: Vec<_> = splits.iter().collect();
    for (a, p) in v.iter().enumerate() {
        for q in &v[a + 1..] {
            if !p.compatible_unchecked(q) {
                return Err(Error::MalformedTree(format!("edge splits {p} and {q} cross")));
            }
        }
    }
    if n >= 3 && splits.len() > n - 3 {
        return Err(Error::MalformedTree("too many edges for the label count".into()));
    }
    Ok(())
}

/// Explicit vertex/edge view of a split set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TreeGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// Carrier vertex of each label, indexed by `label - 1`.
    pub leaf_vertex: Vec<usize>,
    /// For each vertex, the sorted partition of the labels into its branches.
    pub branches: Vec<Vec<Mask>>,
}

impl TreeGraph {
    /// Builds the tree by rooting at label 1. Vertex 0 carries label 1; other
    /// vertices are ordered by decreasing cluster size, then by mask.
    pub fn from_splits(n: usize, splits: &SplitSet) -> TreeGraph {
        let ground = full_mask(n);
        let mut clusters: Vec<Mask> = splits
            .iter()
            .map(|s| s.second()) // the block without label 1
            .collect();
        clusters.sort_by(|a, b| popcount(*b).cmp(&popcount(*a)).then(a.cmp(b)));
        let mut all = vec![ground];
        all.extend(clusters.iter().copied());

        let parent_of = |idx: usize| -> usize {
            let c = all[idx];
            (0..idx)
                .filter(|&j| all[j] & c == c && all[j] != c)
                .min_by_key(|&j| popcount(all[j]))
                .expect("root contains every cluster")
        };
        let mut edges = Vec::new();
        let mut children = vec![Vec::new(); all.len()];
        for idx in 1..all.len() {
            let p = parent_of(idx);
            edges.push((p, idx));
            children[p].push(idx);
        }
        let mut leaf_vertex = vec![0; n];
        for (l, slot) in leaf_vertex.iter_mut().enumerate() {
            let b = bit(l + 1);
            *slot = (0..all.len())
                .filter(|&j| all[j] & b != 0)
                .min_by_key(|&j| popcount(all[j]))
                .unwrap_or(0);
        }
        let mut branches = vec![Vec::new(); all.len()];
        for (v, br) in branches.iter_mut().enumerate() {
            for &c in &children[v] {
                br.push(all[c]);
            }
            for (l, &carrier) in leaf_vertex.iter().enumerate() {
                if carrier == v {
                    br.push(bit(l + 1));
                }
            }
            if v != 0 {
                br.push(ground & !all[v]);
            }
            br.sort_unstable();
        }
        TreeGraph {
            vertex_count: all.len(),
            edges,
            leaf_vertex,
            branches,
        }
    }

    /// Vertex permutation induced by a label permutation that preserves the
    /// split set.
    pub fn induced_vertex_map(&self, relabel: impl Fn(Mask) -> Mask) -> Result<Vec<usize>> {
        let index: HashMap<&[Mask], usize> = self
            .branches
            .iter()
            .enumerate()
            .map(|(v, b)| (b.as_slice(), v))
            .collect();
        self.branches
            .iter()
            .map(|b| {
                let mut img: Vec<Mask> = b.iter().map(|&m| relabel(m)).collect();
                img.sort_unstable();
                index.get(img.as_slice()).copied().ok_or_else(|| {
                    Error::MalformedTree("label involution does not preserve the tree".into())
                })
            })
            .collect()
    }
}

/// Reads the split set off an explicit tree, checking connectivity, acyclicity
/// and vertex stability. `leaf_vertex[l - 1]` is the carrier of label `l`.
pub(crate) fn splits_from_graph(
    vertex_count: usize,
    edges: &[(usize, usize)],
    leaf_vertex: &[usize],
) -> Result<SplitSet> {
    let n = leaf_vertex.len();
    if vertex_count == 0 {
        return Err(Error::MalformedTree("no vertices".into()));
    }
    if edges.len() + 1 != vertex_count {
        return Err(Error::MalformedTree(format!(
            "{} vertices need {} edges for a tree, got {}",
            vertex_count,
            vertex_count - 1,
            edges.len()
        )));
    }
    let mut adj = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        if u >= vertex_count || v >= vertex_count || u == v {
            return Err(Error::MalformedTree(format!("bad edge ({u}, {v})")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut leaves_at = vec![0 as Mask; vertex_count];
    for (l, &v) in leaf_vertex.iter().enumerate() {
        if v >= vertex_count {
            return Err(Error::MalformedTree(format!("label {} on unknown vertex", l + 1)));
        }
        leaves_at[v] |= bit(l + 1);
    }
    for v in 0..vertex_count {
        let valence = adj[v].len() + popcount(leaves_at[v]);
        if valence < 3 {
            return Err(Error::Unstable(format!("vertex {v} has valence {valence}")));
        }
    }
    // connectivity
    let mut seen = vec![false; vertex_count];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::MalformedTree("graph is disconnected".into()));
    }
    let side = |from: usize, avoid: usize| -> Mask {
        let mut m = 0;
        let mut stack = vec![(from, avoid)];
        while let Some((u, p)) = stack.pop() {
            m |= leaves_at[u];
            for &w in &adj[u] {
                if w != p {
                    stack.push((w, u));
                }
            }
        }
        m
    };
    let ground = full_mask(n);
    let mut out = SplitSet::new();
    for &(u, v) in edges {
        let s = Partition2::from_masks(ground, side(v, u), true)?;
        if !out.insert(s) {
            return Err(Error::MalformedTree("two edges induce the same split".into()));
        }
    }
    Ok(out)
}
