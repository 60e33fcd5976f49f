use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Generator, Gf2, Presentation, QuotientRing, RingElement, Universe};
use crate::labels::{bit, full_mask, mask_from_labels, popcount, LabelMap, Mask, Partition2};
use crate::trees::ComplexStableTree;

/// Which boundary ring is presented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryFlavor {
    /// Cohomology of the complex moduli space, divisors `D{J|K}` in degree 2.
    Keel,
    /// Mod 2 cohomology of the real-points space, divisors `RD{J|K}` in degree 1.
    Krasnov,
}

impl BoundaryFlavor {
    pub fn prefix(self) -> &'static str {
        match self {
            BoundaryFlavor::Keel => "D",
            BoundaryFlavor::Krasnov => "RD",
        }
    }

    pub fn generator_degree(self) -> u32 {
        match self {
            BoundaryFlavor::Keel => 2,
            BoundaryFlavor::Krasnov => 1,
        }
    }

    /// Top nonvanishing degree for `n` marked points.
    pub fn socle_degree(self, n: usize) -> u32 {
        (n as u32 - 3) * self.generator_degree()
    }
}

impl fmt::Display for BoundaryFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryFlavor::Keel => "keel",
            BoundaryFlavor::Krasnov => "krasnov",
        })
    }
}

/// Token of the generator indexed by `p`.
pub fn generator_token(flavor: BoundaryFlavor, p: &Partition2) -> String {
    format!("{}{}", flavor.prefix(), p)
}

/// All divisor partitions of `[n]`, in partition order.
pub fn boundary_partitions(n: usize) -> Result<Vec<Partition2>> {
    let ground = full_mask(n);
    let mut out = Vec::new();
    // blocks containing label 1; the rest of the bits range over [2, n]
    let rest = ground & !1;
    let mut sub: Mask = rest;
    loop {
        let j = sub | 1;
        if popcount(j) >= 2 && popcount(ground & !j) >= 2 {
            out.push(Partition2::from_masks(ground, j, true)?);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out.sort();
    Ok(out)
}

/// A presented boundary ring together with its divisor indexing.
#[derive(Debug, Clone)]
pub struct BoundaryRing<F: Field> {
    flavor: BoundaryFlavor,
    n: usize,
    partitions: Vec<Partition2>,
    index: HashMap<Partition2, usize>,
    ring: QuotientRing<F>,
}

fn build<F: Field>(flavor: BoundaryFlavor, n: usize) -> Result<BoundaryRing<F>> {
    if n < 3 {
        return Err(Error::Unstable(format!("the moduli space needs at least 3 points, got {n}")));
    }
    if n > 16 {
        return Err(Error::Arity(format!("presentations are built for at most 16 points, got {n}")));
    }
    let partitions = boundary_partitions(n)?;
    let index: HashMap<Partition2, usize> = partitions.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let universe = Universe::new(
        partitions
            .iter()
            .map(|p| Generator::new(generator_token(flavor, p), flavor.generator_degree()))
            .collect(),
    )?;
    let gen = |i: usize| RingElement::<F>::generator(&universe, i).expect("index in range");

    let mut relations = Vec::new();
    for (a, p) in partitions.iter().enumerate() {
        for (b, q) in partitions.iter().enumerate().skip(a + 1) {
            if !p.compatible_unchecked(q) {
                relations.push(gen(a).mul(&gen(b))?);
            }
        }
    }
    let mut bare = BoundaryRing {
        flavor,
        n,
        partitions,
        index,
        ring: QuotientRing::new(Presentation::new(universe.clone(), Vec::new(), 0)?),
    };
    for s in four_subsets(n) {
        let [a, b, c, d] = s;
        let mask = bit(a) | bit(b) | bit(c) | bit(d);
        let pull = |x: usize, y: usize| {
            let p0 = Partition2::from_masks(mask, bit(x) | bit(y), true)?;
            bare.pullback_boundary_mask(mask, &p0)
        };
        let (ab, ac, ad) = (pull(a, b)?, pull(a, c)?, pull(a, d)?);
        relations.push(ab.sub(&ac)?);
        relations.push(ac.sub(&ad)?);
    }
    bare.ring = QuotientRing::new(Presentation::new(universe, relations, flavor.socle_degree(n))?);
    Ok(bare)
}

fn four_subsets(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (1..=n).flat_map(move |a| {
        (a + 1..=n).flat_map(move |b| {
            (b + 1..=n).flat_map(move |c| (c + 1..=n).map(move |d| [a, b, c, d]))
        })
    })
}

/// The complex boundary presentation on `n` marked points.
pub fn keel_presentation<F: Field>(n: usize) -> Result<BoundaryRing<F>> {
    build(BoundaryFlavor::Keel, n)
}

/// The mod 2 presentation of the real-points space with `k` real points.
pub fn krasnov_presentation(k: usize) -> Result<BoundaryRing<Gf2>> {
    build(BoundaryFlavor::Krasnov, k)
}

impl<F: Field> BoundaryRing<F> {
    pub fn flavor(&self) -> BoundaryFlavor {
        self.flavor
    }

    /// Number of marked points.
    pub fn points(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition2] {
        &self.partitions
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.ring
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.ring.universe()
    }

    /// Same presentation, computed through degree `bound`.
    pub fn with_degree_bound(&self, bound: u32) -> Self {
        BoundaryRing {
            ring: self.ring.with_degree_bound(bound),
            ..self.clone()
        }
    }

    pub fn generator(&self, p: &Partition2) -> Result<RingElement<F>> {
        let i = self
            .index
            .get(p)
            .ok_or_else(|| Error::UnknownGenerator(generator_token(self.flavor, p)))?;
        RingElement::generator(self.universe(), *i)
    }

    fn pullback_boundary_mask(&self, s: Mask, p0: &Partition2) -> Result<RingElement<F>> {
        if popcount(s) != 4 || s & !full_mask(self.n) != 0 {
            return Err(Error::InvalidPartition(
                "pullbacks need four distinct labels from the ground set".into(),
            ));
        }
        if p0.ground() != s || !p0.is_divisor() {
            return Err(Error::InvalidPartition(format!("{p0} is not a 2|2 split of the chosen labels")));
        }
        let mut acc = RingElement::zero(self.universe());
        for (i, p) in self.partitions.iter().enumerate() {
            if p.restrict(s)? == Some(*p0) {
                acc = acc.add(&RingElement::generator(self.universe(), i)?)?;
            }
        }
        Ok(acc)
    }

    /// Pullback of the point `p0` of the four-pointed space along the map
    /// forgetting everything outside `s`: the sum of the divisors restricting
    /// to `p0`.
    pub fn pullback_boundary(&self, s: &[usize], p0: &Partition2) -> Result<RingElement<F>> {
        let mask = mask_from_labels(s.iter().copied(), self.n)?;
        if popcount(mask) != s.len() {
            return Err(Error::InvalidPartition("repeated label in the four-point set".into()));
        }
        self.pullback_boundary_mask(mask, p0)
    }

    /// Product of the divisors of the edges of `tree`.
    pub fn strata_class(&self, tree: &ComplexStableTree) -> Result<RingElement<F>> {
        if tree.labels() != self.n {
            return Err(Error::Arity(format!(
                "tree has {} labels but the ring has {} points",
                tree.labels(),
                self.n
            )));
        }
        let mut acc = RingElement::one(self.universe());
        for p in tree.edge_partitions() {
            acc = acc.mul(&self.generator(p)?)?;
        }
        Ok(acc)
    }

    /// Image of a divisor of the first or second gluing factor under its label map.
    pub fn transport_partition(p: &Partition2, map: &LabelMap) -> Result<Partition2> {
        let target = full_mask(map.target_arity());
        let node = bit(map.node());
        let outer = if p.first() & node == 0 { p.first() } else { p.second() };
        Partition2::from_masks(target, map.map_mask(outer), true)
    }

    /// Image of `x` (an element of this ring) in `target` under the
    /// relabeling induced by one factor of a gluing.
    pub fn transport(&self, x: &RingElement<F>, map: &LabelMap, target: &BoundaryRing<F>) -> Result<RingElement<F>> {
        if map.source_arity() != self.n || map.target_arity() != target.n || self.flavor != target.flavor {
            return Err(Error::Arity("label map does not connect these rings".into()));
        }
        let images = self
            .partitions
            .iter()
            .map(|p| target.generator(&Self::transport_partition(p, map)?))
            .collect::<Result<Vec<_>>>()?;
        x.substitute(target.universe(), &images)
    }
}

impl BoundaryRing<Gf2> {
    /// Mod 2 shadow of the class pulled back from the point `ab|cd`.
    pub fn omega_class(&self, a: usize, b: usize, c: usize, d: usize) -> Result<RingElement<Gf2>> {
        if self.flavor != BoundaryFlavor::Krasnov {
            return Err(Error::OutOfScope(
                "omega classes are only built in the mod 2 real-points ring".into(),
            ));
        }
        let labels = [a, b, c, d];
        let s = mask_from_labels(labels, self.n)?;
        if popcount(s) != 4 {
            return Err(Error::InvalidPartition("omega needs four distinct labels".into()));
        }
        let p0 = Partition2::from_masks(s, bit(a) | bit(b), true)?;
        self.pullback_boundary_mask(s, &p0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    fn p(n: usize, j: &[usize]) -> Partition2 {
        Partition2::divisor(n, j).unwrap()
    }

    #[test]
    fn generator_counts() {
        assert_eq!(boundary_partitions(3).unwrap().len(), 0);
        assert_eq!(boundary_partitions(4).unwrap().len(), 3);
        assert_eq!(boundary_partitions(5).unwrap().len(), 10);
        assert_eq!(boundary_partitions(6).unwrap().len(), 25);
        assert!(keel_presentation::<Rational>(2).is_err());
    }

    #[test]
    fn pullback_examples() {
        let r = keel_presentation::<Rational>(5).unwrap();
        let s = [1, 2, 3, 4];
        let got = r.pullback_boundary(&s, &"{1,2|3,4}".parse().unwrap()).unwrap();
        let want = r.generator(&p(5, &[1, 2])).unwrap().add(&r.generator(&p(5, &[1, 2, 5])).unwrap()).unwrap();
        assert_eq!(got, want);
        let got = r.pullback_boundary(&s, &"{1,3|2,4}".parse().unwrap()).unwrap();
        let want = r.generator(&p(5, &[1, 3])).unwrap().add(&r.generator(&p(5, &[1, 3, 5])).unwrap()).unwrap();
        assert_eq!(got, want);
        let r4 = keel_presentation::<Rational>(4).unwrap();
        assert_eq!(
            r4.pullback_boundary(&s, &"{1,2|3,4}".parse().unwrap()).unwrap(),
            r4.generator(&p(4, &[1, 2])).unwrap()
        );
        assert!(r.pullback_boundary(&[1, 2, 3], &"{1,2|3,4}".parse().unwrap()).is_err());
    }

    #[test]
    fn tokens_are_canonical() {
        let r = keel_presentation::<Rational>(5).unwrap();
        assert_eq!(r.generator(&p(5, &[3, 4])).unwrap().to_string(), "D{1,2,5|3,4}");
        let k = krasnov_presentation(5).unwrap();
        assert_eq!(k.generator(&p(5, &[1, 2])).unwrap().to_string(), "RD{1,2|3,4,5}");
    }

    #[test]
    fn omega_examples() {
        let k4 = krasnov_presentation(4).unwrap();
        assert_eq!(k4.omega_class(1, 2, 3, 4).unwrap(), k4.generator(&p(4, &[1, 2])).unwrap());
        let k5 = krasnov_presentation(5).unwrap();
        let want = k5.generator(&p(5, &[1, 2])).unwrap().add(&k5.generator(&p(5, &[1, 2, 5])).unwrap()).unwrap();
        assert_eq!(k5.omega_class(1, 2, 3, 4).unwrap(), want);
        assert!(k5.omega_class(1, 1, 3, 4).is_err());
        assert!(k5.omega_class(1, 2, 3, 9).is_err());
    }

    #[test]
    fn transport_along_glue() {
        let (first, second) = crate::labels::glue_label_maps(3, 2, 3).unwrap();
        // factor 1 has labels 1..4 with node 3; factor 2 has 1..3 with node 3
        let q = BoundaryRing::<Rational>::transport_partition(&p(4, &[1, 3]), &first).unwrap();
        assert_eq!(q, p(5, &[1, 3, 4]));
        let q = BoundaryRing::<Rational>::transport_partition(&p(4, &[1, 2]), &first).unwrap();
        assert_eq!(q, p(5, &[1, 2]));
        assert_eq!(second.image(), bit(3) | bit(4));
    }
}
