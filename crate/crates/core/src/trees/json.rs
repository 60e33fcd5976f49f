//! JSON exchange format for trees.
//!
//! ```json
//! {"vertices":[0,1],"edges":[[0,1]],"leaves":{"1":0,"2":0,"3":1,"4":1}}
//! ```
//!
//! Real trees leave `leaves` empty and add a `real` member with the vertex
//! involution, the carriers of the real points and the carriers of both
//! points of every conjugate pair.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{splits_from_graph, ComplexStableTree, RealLabel, RealStableTree};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: Vec<u64>,
    pub edges: Vec<[u64; 2]>,
    #[serde(default)]
    pub leaves: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real: Option<RealJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealJson {
    pub involution: BTreeMap<String, u64>,
    #[serde(rename = "realLeaves", default)]
    pub real_leaves: BTreeMap<String, u64>,
    #[serde(default)]
    pub pairs: BTreeMap<String, PairJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub plus: u64,
    pub minus: u64,
}

/// Either flavor of tree, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTree {
    Complex(ComplexStableTree),
    Real(RealStableTree),
}

impl AnyTree {
    pub fn to_json(&self) -> TreeJson {
        match self {
            AnyTree::Complex(t) => t.to_json(),
            AnyTree::Real(t) => t.to_json(),
        }
    }
}

fn key(n: usize) -> String {
    n.to_string()
}

impl ComplexStableTree {
    pub fn to_json(&self) -> TreeJson {
        let g = self.graph();
        TreeJson {
            vertices: (0..g.vertex_count as u64).collect(),
            edges: g.edges.iter().map(|&(a, b)| [a as u64, b as u64]).collect(),
            leaves: g
                .leaf_vertex
                .iter()
                .enumerate()
                .map(|(l, &v)| (key(l + 1), v as u64))
                .collect(),
            real: None,
        }
    }
}

impl RealStableTree {
    pub fn to_json(&self) -> TreeJson {
        let g = self.graph();
        let inv = self.vertex_involution(&g);
        let carrier = |l: RealLabel| g.leaf_vertex[self.index_of(l).expect("valid label") - 1] as u64;
        TreeJson {
            vertices: (0..g.vertex_count as u64).collect(),
            edges: g.edges.iter().map(|&(a, b)| [a as u64, b as u64]).collect(),
            leaves: BTreeMap::new(),
            real: Some(RealJson {
                involution: inv
                    .iter()
                    .enumerate()
                    .map(|(v, &w)| (key(v), w as u64))
                    .collect(),
                real_leaves: (1..=self.reals())
                    .map(|r| (key(r), carrier(RealLabel::Real(r))))
                    .collect(),
                pairs: (1..=self.pairs())
                    .map(|p| {
                        (
                            key(p),
                            PairJson {
                                plus: carrier(RealLabel::Plus(p)),
                                minus: carrier(RealLabel::Minus(p)),
                            },
                        )
                    })
                    .collect(),
            }),
        }
    }
}

fn contiguous_labels<T>(map: &BTreeMap<String, T>, what: &str) -> Result<Vec<(usize, T)>>
where
    T: Copy,
{
    let mut out = Vec::with_capacity(map.len());
    for (k, &v) in map {
        let l: usize = k
            .parse()
            .map_err(|_| Error::MalformedTree(format!("{what} key `{k}` is not a label")))?;
        out.push((l, v));
    }
    out.sort_by_key(|&(l, _)| l);
    for (idx, &(l, _)) in out.iter().enumerate() {
        if l != idx + 1 {
            return Err(Error::MalformedTree(format!(
                "{what} labels must be 1..={}",
                out.len()
            )));
        }
    }
    Ok(out)
}

impl TreeJson {
    pub fn into_tree(&self) -> Result<AnyTree> {
        let index: HashMap<u64, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        if index.len() != self.vertices.len() {
            return Err(Error::MalformedTree("duplicate vertex id".into()));
        }
        let vtx = |id: u64| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::MalformedTree(format!("unknown vertex {id}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|[a, b]| Ok((vtx(*a)?, vtx(*b)?)))
            .collect::<Result<Vec<_>>>()?;

        match &self.real {
            None => {
                let leaves = contiguous_labels(&self.leaves, "leaf")?;
                let carriers = leaves
                    .iter()
                    .map(|&(_, v)| vtx(v))
                    .collect::<Result<Vec<_>>>()?;
                if carriers.len() < 3 {
                    return Err(Error::Unstable("fewer than 3 marked points".into()));
                }
                let splits = splits_from_graph(self.vertices.len(), &edges, &carriers)?;
                ComplexStableTree::from_partitions(carriers.len(), splits).map(AnyTree::Complex)
            }
            Some(real) => {
                if !self.leaves.is_empty() {
                    return Err(Error::MalformedTree(
                        "real trees carry their points in `realLeaves` and `pairs`".into(),
                    ));
                }
                let nv = self.vertices.len();
                let mut inv = vec![usize::MAX; nv];
                for (k, &w) in &real.involution {
                    let v: u64 = k
                        .parse()
                        .map_err(|_| Error::MalformedTree(format!("bad vertex key `{k}`")))?;
                    inv[vtx(v)?] = vtx(w)?;
                }
                if inv.contains(&usize::MAX) {
                    return Err(Error::MalformedTree("involution must be total".into()));
                }
                if (0..nv).any(|v| inv[inv[v]] != v) {
                    return Err(Error::MalformedTree("vertex map is not an involution".into()));
                }
                let edge_set: std::collections::HashSet<(usize, usize)> = edges
                    .iter()
                    .flat_map(|&(a, b)| [(a, b), (b, a)])
                    .collect();
                if edges.iter().any(|&(a, b)| !edge_set.contains(&(inv[a], inv[b]))) {
                    return Err(Error::MalformedTree(
                        "involution is not a tree automorphism".into(),
                    ));
                }
                let reals = contiguous_labels(&real.real_leaves, "real point")?;
                let pairs = contiguous_labels(&real.pairs, "pair")?;
                let mut carriers = Vec::new();
                for &(r, v) in &reals {
                    let v = vtx(v)?;
                    if inv[v] != v {
                        return Err(Error::MalformedTree(format!(
                            "real point {r} sits on a vertex moved by the involution"
                        )));
                    }
                    carriers.push(v);
                }
                for &(p, pj) in &pairs {
                    let (a, b) = (vtx(pj.plus)?, vtx(pj.minus)?);
                    if inv[a] != b {
                        return Err(Error::MalformedTree(format!(
                            "points of pair {p} are not exchanged by the involution"
                        )));
                    }
                    carriers.push(a);
                    carriers.push(b);
                }
                let splits = splits_from_graph(nv, &edges, &carriers)?;
                RealStableTree::from_splits(reals.len(), pairs.len(), splits).map(AnyTree::Real)
            }
        }
    }
}

/// Parses a tree from its JSON text.
pub fn parse_tree(text: &str) -> Result<AnyTree> {
    let j: TreeJson = serde_json::from_str(text)
        .map_err(|e| Error::MalformedTree(format!("invalid tree JSON: {e}")))?;
    j.into_tree()
}
