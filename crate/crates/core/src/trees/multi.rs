//! Simultaneous gluing at every input of a tree, computed in one graft.
//!
//! `None` stands for the unit at that input: the label is kept and only
//! renumbered.

use super::{check_split_set, graft, ComplexStableTree, Graft, RealLabel, RealStableTree};
use crate::error::{Error, Result};

type LabelFn = Box<dyn Fn(usize) -> usize>;

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

impl ComplexStableTree {
    /// Glues `guests[s - 1]` at every input `s`; the last label stays the
    /// output. Guest inputs are numbered consecutively in slot order.
    pub fn glue_all(&self, guests: &[Option<&ComplexStableTree>]) -> Result<ComplexStableTree> {
        let k = self.labels() - 1;
        if guests.len() != k {
            return Err(Error::Arity(format!("expected {k} guests, got {}", guests.len())));
        }
        let sizes: Vec<usize> = guests.iter().map(|g| g.map_or(1, |t| t.labels() - 1)).collect();
        let off = offsets(&sizes);
        let total: usize = sizes.iter().sum();
        let host_map = |x: usize| if x <= k { off[x - 1] + 1 } else { total + 1 };
        let maps: Vec<Box<dyn Fn(usize) -> usize>> = off
            .iter()
            .map(|&o| Box::new(move |y: usize| o + y) as Box<dyn Fn(usize) -> usize>)
            .collect();
        let grafts: Vec<Graft<'_>> = guests
            .iter()
            .enumerate()
            .filter_map(|(s, g)| {
                g.map(|t| Graft {
                    host_label: s + 1,
                    guest: t.edge_partitions(),
                    guest_root: t.labels(),
                    guest_map: &*maps[s],
                    guest_labels: t.labels(),
                })
            })
            .collect();
        let splits = graft(self.edge_partitions(), &host_map, &grafts, total + 1)?;
        check_split_set(total + 1, &splits)?;
        Ok(ComplexStableTree::from_splits_unchecked(total + 1, splits))
    }
}

impl RealStableTree {
    /// Glues `guests[p - 1]` at pairs `p = 1..=guests.len()` (the copy at
    /// `p+`, its mirror at `p-`). Pairs after the last guest slot keep their
    /// order behind the new ones.
    pub fn glue_all_complex(&self, guests: &[Option<&ComplexStableTree>]) -> Result<RealStableTree> {
        let inputs = guests.len();
        if inputs > self.pairs() {
            return Err(Error::Arity(format!(
                "{inputs} guests for {} conjugate pairs",
                self.pairs()
            )));
        }
        if guests.iter().flatten().any(|t| t.labels() < 3) {
            return Err(Error::Arity("complex guests need at least 3 labels".into()));
        }
        let sizes: Vec<usize> = guests.iter().map(|g| g.map_or(1, |t| t.labels() - 1)).collect();
        let off = offsets(&sizes);
        let total: usize = sizes.iter().sum();
        let reals = self.reals();
        let pairs = total + self.pairs() - inputs;
        let new_pair = |p: usize| if p <= inputs { off[p - 1] + 1 } else { total + p - inputs };
        let host_map = |x: usize| match self.label_at(x) {
            RealLabel::Real(r) => r,
            RealLabel::Plus(p) => reals + 2 * new_pair(p) - 1,
            RealLabel::Minus(p) => reals + 2 * new_pair(p),
        };
        let mut maps: Vec<(usize, LabelFn)> = Vec::new();
        for (p, g) in guests.iter().enumerate() {
            if g.is_some() {
                let o = off[p];
                maps.push((self.index_of(RealLabel::Plus(p + 1))?, Box::new(move |y| reals + 2 * (o + y) - 1)));
                maps.push((self.index_of(RealLabel::Minus(p + 1))?, Box::new(move |y| reals + 2 * (o + y))));
            }
        }
        let placed: Vec<&ComplexStableTree> = guests.iter().flatten().flat_map(|t| [*t, *t]).collect();
        let grafts: Vec<Graft<'_>> = maps
            .iter()
            .zip(placed)
            .map(|((site, f), t)| Graft {
                host_label: *site,
                guest: t.edge_partitions(),
                guest_root: t.labels(),
                guest_map: &**f,
                guest_labels: t.labels(),
            })
            .collect();
        let splits = graft(self.splits(), &host_map, &grafts, reals + 2 * pairs)?;
        RealStableTree::from_splits(reals, pairs, splits)
    }

    /// Glues `guests[r - 1]` at every real input `r`, identifying `r` with
    /// the guest's last real point; the last real point of `self` stays the
    /// output. Guest real inputs are numbered consecutively in slot order.
    /// Pair blocks follow the iterated right-to-left composition: the pairs
    /// of `self`, then those of the guest at the last slot, and so on down to
    /// the first slot.
    pub fn glue_all_real(&self, guests: &[Option<&RealStableTree>]) -> Result<RealStableTree> {
        if self.reals() == 0 {
            return Err(Error::Arity("real gluing needs real points".into()));
        }
        let a = self.reals() - 1;
        if guests.len() != a {
            return Err(Error::Arity(format!("expected {a} guests, got {}", guests.len())));
        }
        if guests.iter().flatten().any(|t| t.reals() == 0) {
            return Err(Error::Arity("real guests need a real output point".into()));
        }
        let real_sizes: Vec<usize> = guests.iter().map(|g| g.map_or(1, |t| t.reals() - 1)).collect();
        let pair_sizes: Vec<usize> = guests.iter().map(|g| g.map_or(0, |t| t.pairs())).collect();
        let roff = offsets(&real_sizes);
        let total_reals: usize = real_sizes.iter().sum();
        let mut poff = vec![0; a];
        let mut acc = self.pairs();
        for r in (0..a).rev() {
            poff[r] = acc;
            acc += pair_sizes[r];
        }
        let (reals, pairs) = (total_reals + 1, acc);
        let host_map = |x: usize| match self.label_at(x) {
            RealLabel::Real(r) if r <= a => roff[r - 1] + 1,
            RealLabel::Real(_) => reals,
            RealLabel::Plus(p) => reals + 2 * p - 1,
            RealLabel::Minus(p) => reals + 2 * p,
        };
        let maps: Vec<Box<dyn Fn(usize) -> usize + '_>> = (0..a)
            .map(|r| {
                let (ro, po) = (roff[r], poff[r]);
                let guest_reals = real_sizes[r] + 1;
                Box::new(move |y: usize| {
                    if y < guest_reals {
                        ro + y
                    } else {
                        let off = y - guest_reals - 1;
                        let p = po + off / 2 + 1;
                        if off.is_multiple_of(2) {
                            reals + 2 * p - 1
                        } else {
                            reals + 2 * p
                        }
                    }
                }) as Box<dyn Fn(usize) -> usize>
            })
            .collect();
        let grafts: Vec<Graft<'_>> = guests
            .iter()
            .enumerate()
            .filter_map(|(r, g)| {
                g.map(|t| Graft {
                    host_label: r + 1,
                    guest: t.splits(),
                    guest_root: t.reals(),
                    guest_map: &*maps[r],
                    guest_labels: t.doubled_labels(),
                })
            })
            .collect();
        let splits = graft(self.splits(), &host_map, &grafts, reals + 2 * pairs)?;
        RealStableTree::from_splits(reals, pairs, splits)
    }
}
