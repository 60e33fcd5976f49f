use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::trees::{ComplexStableTree, RealStableTree};

/// Which space the strata of a sum live in.
///
/// * `Complex(n)`: `n` inputs, trees with `n + 1` labels; `n = 1` is the
///   scalar line.
/// * `Real { inputs, pairs }`: trees with `inputs + 1` real points (the last
///   one is the output) and `pairs` conjugate pairs; `(1, 0)` is the scalar
///   line.
/// * `Conjugate(k)`: trees without real points and `k + 1` pairs, the last
///   pair being the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Complex(usize),
    Real { inputs: usize, pairs: usize },
    Conjugate(usize),
}

impl Flavor {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Flavor::Complex(n) => n >= 1,
            Flavor::Real { inputs, .. } => inputs >= 1,
            Flavor::Conjugate(k) => k >= 1,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Arity(format!("{self} has no elements")))
        }
    }

    /// Whether the space is a scalar line rather than a homology group.
    pub fn is_scalar(self) -> bool {
        matches!(self, Flavor::Complex(1) | Flavor::Real { inputs: 1, pairs: 0 })
    }

    pub fn of_complex(t: &ComplexStableTree) -> Flavor {
        Flavor::Complex(t.labels() - 1)
    }

    pub fn of_real(t: &RealStableTree) -> Flavor {
        match t.reals() {
            0 => Flavor::Conjugate(t.pairs() - 1),
            r => Flavor::Real {
                inputs: r - 1,
                pairs: t.pairs(),
            },
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Complex(n) => write!(f, "O_C({n})"),
            Flavor::Real { inputs, pairs } => write!(f, "O_R({inputs},{pairs})"),
            Flavor::Conjugate(k) => write!(f, "O_RC({k})"),
        }
    }
}

/// One spanning element: a stratum, or the unit of a scalar line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stratum {
    Unit,
    Complex(ComplexStableTree),
    Real(RealStableTree),
}

impl Stratum {
    fn fits(&self, flavor: Flavor) -> bool {
        match self {
            Stratum::Unit => flavor.is_scalar(),
            Stratum::Complex(t) => Flavor::of_complex(t) == flavor,
            Stratum::Real(t) => Flavor::of_real(t) == flavor,
        }
    }
}

/// A formal rational combination of strata of one flavor.
///
/// Equality is syntactic: two sums are equal when they have the same
/// coefficients on the same canonical trees. This is finer than equality in
/// homology.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrataSum {
    flavor: Flavor,
    terms: BTreeMap<Stratum, BigRational>,
}

impl StrataSum {
    pub fn zero(flavor: Flavor) -> Result<Self> {
        Ok(StrataSum {
            flavor: flavor.validate()?,
            terms: BTreeMap::new(),
        })
    }

    /// `c` times `s`.
    pub fn term(flavor: Flavor, s: Stratum, c: BigRational) -> Result<Self> {
        let mut out = Self::zero(flavor)?;
        out.add_term(s, c)?;
        Ok(out)
    }

    /// `1₊`, the unit of the complex scalar line.
    pub fn unit_complex() -> Self {
        Self::term(Flavor::Complex(1), Stratum::Unit, BigRational::one()).expect("scalar flavor")
    }

    /// `1_ℝ`, the unit of the real scalar line.
    pub fn unit_real() -> Self {
        Self::term(Flavor::Real { inputs: 1, pairs: 0 }, Stratum::Unit, BigRational::one()).expect("scalar flavor")
    }

    pub fn scalar(flavor: Flavor, c: BigRational) -> Result<Self> {
        if !flavor.is_scalar() {
            return Err(Error::Arity(format!("{flavor} is not a scalar line")));
        }
        Self::term(flavor, Stratum::Unit, c)
    }

    pub fn complex(t: ComplexStableTree) -> Self {
        let f = Flavor::of_complex(&t);
        Self::term(f, Stratum::Complex(t), BigRational::one()).expect("flavor read off the tree")
    }

    pub fn real(t: RealStableTree) -> Self {
        let f = Flavor::of_real(&t);
        Self::term(f, Stratum::Real(t), BigRational::one()).expect("flavor read off the tree")
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Stratum, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &Stratum) -> BigRational {
        self.terms.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, s: Stratum, c: BigRational) -> Result<()> {
        if !s.fits(self.flavor) {
            return Err(Error::Arity(format!("stratum does not belong to {}", self.flavor)));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(s) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &StrataSum) -> Result<StrataSum> {
        if self.flavor != other.flavor {
            return Err(Error::Arity(format!("cannot add {} and {}", self.flavor, other.flavor)));
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &StrataSum) -> Result<StrataSum> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> StrataSum {
        if c.is_zero() {
            return StrataSum {
                flavor: self.flavor,
                terms: BTreeMap::new(),
            };
        }
        StrataSum {
            flavor: self.flavor,
            terms: self.terms.iter().map(|(s, v)| (s.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> StrataSum {
        self.scale(&-BigRational::one())
    }

    /// Coefficient of the unit when the flavor is a scalar line.
    pub fn as_scalar(&self) -> Option<BigRational> {
        self.flavor.is_scalar().then(|| self.coefficient(&Stratum::Unit))
    }
}

impl fmt::Display for StrataSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 in {}", self.flavor);
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match s {
                Stratum::Unit => write!(f, "{c}")?,
                Stratum::Complex(t) => write!(f, "{c}*[{}]", edges_text(t.edge_partitions().iter()))?,
                Stratum::Real(t) => write!(
                    f,
                    "{c}*[{}]",
                    t.splits().iter().map(|s| t.format_split(s)).collect::<Vec<_>>().join(" ")
                )?,
            }
        }
        Ok(())
    }
}

fn edges_text<'a>(it: impl Iterator<Item = &'a crate::labels::Partition2>) -> String {
    it.map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}
