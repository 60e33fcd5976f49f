//! Label-set combinatorics.
//!
//! Labels are the positive integers `1..=n`. Subsets of a label set are packed
//! into a `u128` bit mask, bit `j - 1` standing for label `j`, which caps every
//! label set used in this crate at 128 labels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest label that fits in a [`Mask`].
pub const MAX_LABEL: usize = 128;

/// Bit mask over labels `1..=128`.
pub type Mask = u128;

#[inline]
pub fn bit(label: usize) -> Mask {
    debug_assert!((1..=MAX_LABEL).contains(&label));
    1u128 << (label - 1)
}

/// Mask of the full label set `[n]`.
#[inline]
pub fn full_mask(n: usize) -> Mask {
    debug_assert!(n <= MAX_LABEL);
    if n == MAX_LABEL {
        Mask::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub fn mask_from_labels<I: IntoIterator<Item = usize>>(labels: I, n: usize) -> Result<Mask> {
    let mut m = 0;
    for l in labels {
        if l == 0 || l > n || l > MAX_LABEL {
            return Err(Error::LabelOutOfRange { label: l, size: n });
        }
        m |= bit(l);
    }
    Ok(m)
}

/// Iterates the labels of a mask in increasing order.
pub fn labels_of(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let tz = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(tz + 1)
        }
    })
}

#[inline]
pub fn popcount(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// The label set `[n] = {1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet {
    size: usize,
}

impl LabelSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_LABEL {
            return Err(Error::Arity(format!(
                "label set size must be in 1..={MAX_LABEL}, got {size}"
            )));
        }
        Ok(LabelSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mask(&self) -> Mask {
        full_mask(self.size)
    }

    pub fn contains(&self, label: usize) -> bool {
        (1..=self.size).contains(&label)
    }
}

/// An unordered partition of a ground set into two blocks `{J, K}`.
///
/// Stored canonically: `block` is the block holding the smallest ground label,
/// so `{J, K}` and `{K, J}` compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition2 {
    ground: Mask,
    block: Mask,
}

impl Partition2 {
    /// Builds the partition `{J, ground \ J}` from raw masks.
    ///
    /// With `divisor` set, both blocks must have at least two elements.
    pub fn from_masks(ground: Mask, j: Mask, divisor: bool) -> Result<Self> {
        if ground == 0 {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        if j & !ground != 0 {
            let stray = labels_of(j & !ground).next().unwrap_or(0);
            return Err(Error::LabelOutOfRange {
                label: stray,
                size: labels_of(ground).last().unwrap_or(0),
            });
        }
        let k = ground & !j;
        if divisor && (popcount(j) < 2 || popcount(k) < 2) {
            return Err(Error::InvalidPartition(format!(
                "blocks of a boundary divisor need at least two labels each, got sizes {} and {}",
                popcount(j),
                popcount(k)
            )));
        }
        let low = ground & ground.wrapping_neg();
        let block = if j & low != 0 { j } else { k };
        Ok(Partition2 { ground, block })
    }

    /// Divisor-mode partition of `[n]` with block `J`.
    pub fn divisor(n: usize, j: &[usize]) -> Result<Self> {
        let ground = LabelSet::new(n)?.mask();
        let jm = mask_from_labels(j.iter().copied(), n)?;
        Self::from_masks(ground, jm, true)
    }

    /// Two-block partition of `[n]` without block-size constraints.
    pub fn split(n: usize, j: &[usize]) -> Result<Self> {
        let ground = LabelSet::new(n)?.mask();
        let jm = mask_from_labels(j.iter().copied(), n)?;
        Self::from_masks(ground, jm, false)
    }

    pub fn ground(&self) -> Mask {
        self.ground
    }

    /// Block containing the smallest ground label.
    pub fn first(&self) -> Mask {
        self.block
    }

    pub fn second(&self) -> Mask {
        self.ground & !self.block
    }

    pub fn blocks(&self) -> (Mask, Mask) {
        (self.first(), self.second())
    }

    /// Block containing `label`, if the label is in the ground set.
    pub fn block_of(&self, label: usize) -> Option<Mask> {
        let b = bit(label);
        if self.ground & b == 0 {
            None
        } else if self.block & b != 0 {
            Some(self.first())
        } else {
            Some(self.second())
        }
    }

    pub fn is_divisor(&self) -> bool {
        popcount(self.first()) >= 2 && popcount(self.second()) >= 2
    }

    /// True iff at least one of the four block intersections is empty.
    pub fn compatible(&self, other: &Partition2) -> Result<bool> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        Ok(self.compatible_unchecked(other))
    }

    #[inline]
    pub(crate) fn compatible_unchecked(&self, other: &Partition2) -> bool {
        let (a, b) = self.blocks();
        let (c, d) = other.blocks();
        a & c == 0 || a & d == 0 || b & c == 0 || b & d == 0
    }

    /// `{J ∩ S, K ∩ S}` when both intersections have at least two labels.
    pub fn restrict_to(&self, s: Mask) -> Result<Option<Partition2>> {
        if s & !self.ground != 0 {
            return Err(Error::InvalidPartition(
                "restriction set is not contained in the ground set".into(),
            ));
        }
        let (j, k) = (self.first() & s, self.second() & s);
        if popcount(j) < 2 || popcount(k) < 2 {
            return Ok(None);
        }
        Partition2::from_masks(s, j, true).map(Some)
    }

    /// Restriction to a four-element subset, as induced by the forgetful map to
    /// the four-pointed space.
    pub fn restrict(&self, s: Mask) -> Result<Option<Partition2>> {
        if popcount(s) != 4 {
            return Err(Error::InvalidPartition(format!(
                "restriction set must have four labels, got {}",
                popcount(s)
            )));
        }
        self.restrict_to(s)
    }

    /// Image of this partition under a relabeling of its ground set.
    pub(crate) fn map_blocks(&self, f: impl Fn(Mask) -> Mask, new_ground: Mask) -> Result<Self> {
        Partition2::from_masks(new_ground, f(self.first()), self.is_divisor())
    }
}

fn write_block(f: &mut fmt::Formatter<'_>, m: Mask) -> fmt::Result {
    let mut first = true;
    for l in labels_of(m) {
        if !first {
            f.write_str(",")?;
        }
        first = false;
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for Partition2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_block(f, self.first())?;
        f.write_str("|")?;
        write_block(f, self.second())?;
        f.write_str("}")
    }
}

/// Parses `J|K` (optionally wrapped in braces) into the two label masks.
pub fn parse_blocks(text: &str) -> Result<(Mask, Mask)> {
    let t = text.trim();
    let t = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(t);
    let (a, b) = t
        .split_once('|')
        .ok_or_else(|| Error::InvalidPartition(format!("expected `J|K`, got `{text}`")))?;
    let parse = |s: &str| -> Result<Mask> {
        let mut m = 0;
        for tok in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let l: usize = tok
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad label `{tok}`")))?;
            if l == 0 || l > MAX_LABEL {
                return Err(Error::LabelOutOfRange {
                    label: l,
                    size: MAX_LABEL,
                });
            }
            if m & bit(l) != 0 {
                return Err(Error::InvalidPartition(format!("label {l} repeated")));
            }
            m |= bit(l);
        }
        Ok(m)
    };
    let (j, k) = (parse(a)?, parse(b)?);
    if j & k != 0 {
        return Err(Error::InvalidPartition("blocks overlap".into()));
    }
    Ok((j, k))
}

impl FromStr for Partition2 {
    type Err = Error;

    /// Parses the textual form `{1,2|3,4,5}` in divisor mode; the ground set is
    /// the union of the two blocks.
    fn from_str(s: &str) -> Result<Self> {
        let (j, k) = parse_blocks(s)?;
        Partition2::from_masks(j | k, j, true)
    }
}

/// Injective relabeling of `[source] \ {node}` into `[target]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    source: usize,
    target: usize,
    node: usize,
    images: Vec<usize>,
}

impl LabelMap {
    pub fn source_arity(&self) -> usize {
        self.source
    }

    pub fn target_arity(&self) -> usize {
        self.target
    }

    /// The source label that becomes the node and has no image.
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn apply(&self, label: usize) -> Option<usize> {
        if label == self.node || label == 0 || label > self.source {
            None
        } else {
            Some(self.images[label - 1])
        }
    }

    /// `(source, image)` pairs in increasing source order, node omitted.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.source).filter_map(move |l| self.apply(l).map(|t| (l, t)))
    }

    /// Image of all labels of `mask`, the node being dropped.
    pub fn map_mask(&self, mask: Mask) -> Mask {
        labels_of(mask)
            .filter_map(|l| self.apply(l))
            .fold(0, |acc, t| acc | bit(t))
    }

    /// Mask of all images.
    pub fn image(&self) -> Mask {
        self.map_mask(full_mask(self.source))
    }
}

/// Relabeling maps of the complex gluing at slot `i`.
///
/// The first factor carries labels `1..=k+1` and loses label `i` to the node;
/// the second carries `1..=l+1` and loses its last label.
pub fn glue_label_maps(k: usize, l: usize, i: usize) -> Result<(LabelMap, LabelMap)> {
    if k < 2 || l < 2 {
        return Err(Error::Arity(format!(
            "gluing needs both arities at least 2, got {k} and {l}"
        )));
    }
    if i == 0 || i > k {
        return Err(Error::SlotOutOfRange { slot: i, max: k });
    }
    let target = k + l - 1;
    if target + 1 > MAX_LABEL {
        return Err(Error::Arity("label set too large".into()));
    }
    let first = LabelMap {
        source: k + 1,
        target: target + 1,
        node: i,
        images: (1..=k + 1)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => j,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => j + l - 1,
            })
            .collect(),
    };
    let second = LabelMap {
        source: l + 1,
        target: target + 1,
        node: l + 1,
        images: (1..=l + 1)
            .map(|j| if j <= l { j + i - 1 } else { 0 })
            .collect(),
    };
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, j: &[usize]) -> Partition2 {
        Partition2::divisor(n, j).unwrap()
    }

    #[test]
    fn canonical_pairs() {
        assert_eq!(p(4, &[1, 2]).to_string(), "{1,2|3,4}");
        assert_eq!(p(4, &[3, 4]), p(4, &[1, 2]));
        assert!(Partition2::divisor(4, &[1]).is_err());
        assert!(Partition2::divisor(4, &[1, 2, 3]).is_err());
        assert!(matches!(
            Partition2::divisor(4, &[1, 7]),
            Err(Error::LabelOutOfRange { label: 7, .. })
        ));
        assert!(Partition2::split(4, &[]).is_ok());
    }

    #[test]
    fn compatibility() {
        assert!(!p(4, &[1, 2]).compatible(&p(4, &[1, 3])).unwrap());
        // {1,2}∩{3,4} = ∅
        assert!(p(5, &[1, 2]).compatible(&p(5, &[1, 2, 5])).unwrap());
        let q = p(5, &[1, 3]);
        assert!(q.compatible(&q).unwrap());
        assert_eq!(
            p(4, &[1, 2]).compatible(&p(5, &[1, 2])),
            Err(Error::GroundMismatch)
        );
    }

    #[test]
    fn restriction() {
        let s = mask_from_labels([1, 2, 3, 4], 6).unwrap();
        assert_eq!(
            p(5, &[1, 2]).restrict(s & full_mask(5)).unwrap(),
            Some(p(4, &[1, 2]))
        );
        assert_eq!(p(5, &[1, 5]).restrict(s & full_mask(5)).unwrap(), None);
        assert_eq!(p(6, &[1, 2, 5]).restrict(s).unwrap(), Some(p(4, &[1, 2])));
        assert!(p(6, &[1, 2, 5]).restrict(0b111).is_err());
    }

    #[test]
    fn glue_maps_examples() {
        let (a, b) = glue_label_maps(2, 2, 1).unwrap();
        assert_eq!(a.pairs().collect::<Vec<_>>(), vec![(2, 3), (3, 4)]);
        assert_eq!(b.pairs().collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);

        let (a, b) = glue_label_maps(2, 3, 2).unwrap();
        assert_eq!(a.pairs().collect::<Vec<_>>(), vec![(1, 1), (3, 5)]);
        assert_eq!(b.pairs().collect::<Vec<_>>(), vec![(1, 2), (2, 3), (3, 4)]);

        let (a, b) = glue_label_maps(3, 2, 2).unwrap();
        assert_eq!(a.pairs().collect::<Vec<_>>(), vec![(1, 1), (3, 4), (4, 5)]);
        assert_eq!(b.pairs().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);

        assert!(glue_label_maps(2, 2, 3).is_err());
        assert!(glue_label_maps(1, 2, 1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let q: Partition2 = "{3,4|1,2}".parse().unwrap();
        assert_eq!(q.to_string(), "{1,2|3,4}");
        assert!("{1|2,3,4}".parse::<Partition2>().is_err());
        assert!("{1,2|2,3}".parse::<Partition2>().is_err());
    }
}
