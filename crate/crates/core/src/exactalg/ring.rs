use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use crate::error::{Error, Result};

/// A ring generator: an opaque token and its degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub token: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(token: impl Into<String>, degree: u32) -> Self {
        Generator {
            token: token.into(),
            degree,
        }
    }
}

/// The ordered generator list shared by all elements of one polynomial ring.
/// Generator order is the variable order of the monomial order.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new(generators: Vec<Generator>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::Arity(format!("generator {} has degree 0", g.token)));
            }
            if index.insert(g.token.clone(), i).is_some() {
                return Err(Error::Arity(format!("duplicate generator {}", g.token)));
            }
        }
        Ok(Arc::new(Universe { generators, index }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn lookup(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub(crate) fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }
}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector with its cached weighted degree, ordered by weighted
/// degree reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; vars].into_boxed_slice(),
        }
    }

    pub fn variable(vars: usize, var: usize, weight: u32) -> Self {
        let mut m = Self::one(vars);
        m.exps[var] = 1;
        m.degree = weight;
        m
    }

    pub(crate) fn from_parts(exps: Box<[u8]>, degree: u32) -> Self {
        Monomial { degree, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Box<[u8]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { degree, exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    // smaller power of the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial without its universe; terms keyed by monomial, largest last.
pub(crate) type Poly<F> = BTreeMap<Monomial, F>;

pub(crate) fn poly_add_scaled<F: Field>(acc: &mut Poly<F>, other: &Poly<F>, c: &F, shift: Option<&Monomial>) {
    for (m, v) in other {
        let m = match shift {
            Some(s) => s.mul(m),
            None => m.clone(),
        };
        let term = v.mul(c);
        match acc.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(term);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&term);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub(crate) fn poly_mul<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut out = Poly::new();
    for (m, c) in a {
        poly_add_scaled(&mut out, b, c, Some(m));
    }
    out
}

/// Element of the polynomial ring on a [`Universe`] over `F`.
#[derive(Debug, Clone)]
pub struct RingElement<F: Field> {
    universe: Arc<Universe>,
    terms: Poly<F>,
}

impl<F: Field> PartialEq for RingElement<F> {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl<F: Field> Eq for RingElement<F> {}

impl<F: Field> RingElement<F> {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        RingElement {
            universe: universe.clone(),
            terms: Poly::new(),
        }
    }

    pub fn constant(universe: &Arc<Universe>, c: F) -> Self {
        let mut e = Self::zero(universe);
        if !c.is_zero() {
            e.terms.insert(Monomial::one(universe.len()), c);
        }
        e
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::constant(universe, F::one())
    }

    pub fn generator(universe: &Arc<Universe>, var: usize) -> Result<Self> {
        let g = universe
            .generators
            .get(var)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{var}")))?;
        let mut e = Self::zero(universe);
        e.terms
            .insert(Monomial::variable(universe.len(), var, g.degree), F::one());
        Ok(e)
    }

    /// Generator by token.
    pub fn named(universe: &Arc<Universe>, token: &str) -> Result<Self> {
        let var = universe
            .lookup(token)
            .ok_or_else(|| Error::UnknownGenerator(token.to_string()))?;
        Self::generator(universe, var)
    }

    /// `c` times the product of the listed generators (repeats allowed).
    pub fn term(universe: &Arc<Universe>, c: F, vars: &[usize]) -> Result<Self> {
        let mut m = Monomial::one(universe.len());
        for &v in vars {
            let g = universe
                .generators
                .get(v)
                .ok_or_else(|| Error::UnknownGenerator(format!("#{v}")))?;
            m = m.mul(&Monomial::variable(universe.len(), v, g.degree));
        }
        let mut e = Self::zero(universe);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        Ok(e)
    }

    pub(crate) fn from_poly(universe: &Arc<Universe>, terms: Poly<F>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        RingElement {
            universe: universe.clone(),
            terms,
        }
    }

    pub(crate) fn poly(&self) -> &Poly<F> {
        &self.terms
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        poly_add_scaled(&mut terms, &other.terms, &F::one(), None);
        Ok(Self::from_poly(&self.universe, terms))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        poly_add_scaled(&mut terms, &other.terms, &F::one().neg(), None);
        Ok(Self::from_poly(&self.universe, terms))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_poly(&self.universe, poly_mul(&self.terms, &other.terms)))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.mul(c)))
            .collect();
        Self::from_poly(&self.universe, terms)
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.universe);
        for _ in 0..e {
            acc = Self::from_poly(&self.universe, poly_mul(&acc.terms, &self.terms));
        }
        acc
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::from_poly(&self.universe, terms)
    }

    /// Image under a substitution of generators by elements of another ring.
    pub fn substitute(&self, target: &Arc<Universe>, images: &[RingElement<F>]) -> Result<Self> {
        if images.len() != self.universe.len() {
            return Err(Error::UniverseMismatch);
        }
        if images.iter().any(|i| !same_universe(&i.universe, target)) {
            return Err(Error::UniverseMismatch);
        }
        let mut out = Poly::new();
        for (m, c) in &self.terms {
            let mut t = Poly::new();
            t.insert(Monomial::one(target.len()), c.clone());
            for (var, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = poly_mul(&t, &images[var].terms);
                }
            }
            poly_add_scaled(&mut out, &t, &F::one(), None);
        }
        Ok(Self::from_poly(target, out))
    }
}

impl<F: Field> fmt::Display for RingElement<F> {
    /// Terms from largest to smallest as `c*G1*G2`, omitting unit
    /// coefficients; the zero element prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let q = c.to_rational();
            let negative = q < num_rational::BigRational::from_integer(0.into());
            let mag = if negative { -q } else { q };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !num_traits::One::is_one(&mag) {
                factors.push(mag.to_string());
            }
            for (var, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    factors.push(self.universe.generators[var].token.clone());
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
