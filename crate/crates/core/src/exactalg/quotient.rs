use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::groebner::{complete, Basis};
use super::ring::{Monomial, Poly, RingElement, Universe};
use crate::error::{Error, Result};

/// Generators, homogeneous relations and the degree through which the
/// quotient is computed.
#[derive(Debug, Clone)]
pub struct Presentation<F: Field> {
    universe: Arc<Universe>,
    relations: Vec<RingElement<F>>,
    degree_bound: u32,
}

impl<F: Field> Presentation<F> {
    pub fn new(universe: Arc<Universe>, relations: Vec<RingElement<F>>, degree_bound: u32) -> Result<Self> {
        for r in &relations {
            if !Arc::ptr_eq(r.universe(), &universe) && **r.universe() != *universe {
                return Err(Error::UniverseMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(Presentation {
            universe,
            relations: relations.into_iter().filter(|r| !r.is_zero()).collect(),
            degree_bound,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn relations(&self) -> &[RingElement<F>] {
        &self.relations
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// gcd of the generator degrees; graded pieces in other degrees vanish.
    pub fn grade_step(&self) -> u32 {
        self.universe
            .generators()
            .iter()
            .fold(0, |g, x| num_integer::gcd(g, x.degree))
            .max(1)
    }
}

/// One entry of a Hilbert function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertEntry {
    pub degree: u32,
    pub dimension: usize,
}

/// Dimensions of the graded pieces, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction(pub Vec<HilbertEntry>);

impl HilbertFunction {
    pub fn dimensions(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.dimension).collect()
    }

    pub fn is_palindromic(&self) -> bool {
        let d = self.dimensions();
        d.iter().eq(d.iter().rev())
    }

    /// Alternating sum over the listed degrees, with sign `(-1)^degree`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|e| if e.degree % 2 == 0 { e.dimension as i64 } else { -(e.dimension as i64) })
            .sum()
    }
}

/// A presented graded ring with a lazily computed Gröbner basis.
#[derive(Debug)]
pub struct QuotientRing<F: Field> {
    presentation: Presentation<F>,
    completion: OnceLock<Basis<F>>,
}

impl<F: Field> Clone for QuotientRing<F> {
    fn clone(&self) -> Self {
        let completion = OnceLock::new();
        if let Some(b) = self.completion.get() {
            let _ = completion.set(b.clone());
        }
        QuotientRing {
            presentation: self.presentation.clone(),
            completion,
        }
    }
}

impl<F: Field> QuotientRing<F> {
    pub fn new(presentation: Presentation<F>) -> Self {
        QuotientRing {
            presentation,
            completion: OnceLock::new(),
        }
    }

    /// Same ring computed through a different degree.
    pub fn with_degree_bound(&self, bound: u32) -> Self {
        let mut p = self.presentation.clone();
        p.degree_bound = bound;
        Self::new(p)
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.presentation.universe
    }

    pub fn degree_bound(&self) -> u32 {
        self.presentation.degree_bound
    }

    pub fn grade_step(&self) -> u32 {
        self.presentation.grade_step()
    }

    fn basis(&self) -> &Basis<F> {
        self.completion.get_or_init(|| {
            let u = &self.presentation.universe;
            let rels: Vec<Poly<F>> = self.presentation.relations.iter().map(|r| r.poly().clone()).collect();
            complete(&u.weights(), &rels, self.presentation.degree_bound)
        })
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        let bound = self.presentation.degree_bound;
        if d > bound {
            Err(Error::DegreeBound { degree: d, bound })
        } else {
            Ok(())
        }
    }

    fn check_universe(&self, a: &RingElement<F>) -> Result<()> {
        let u = &self.presentation.universe;
        if Arc::ptr_eq(a.universe(), u) || **a.universe() == **u {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Canonical representative of `a` modulo the relations.
    pub fn normal_form(&self, a: &RingElement<F>) -> Result<RingElement<F>> {
        self.check_universe(a)?;
        if let Some(d) = a.degree() {
            self.check_degree(d)?;
        }
        Ok(RingElement::from_poly(self.universe(), self.basis().reduce(a.poly().clone())))
    }

    pub fn is_zero(&self, a: &RingElement<F>) -> Result<bool> {
        Ok(self.normal_form(a)?.is_zero())
    }

    pub fn equal(&self, a: &RingElement<F>, b: &RingElement<F>) -> Result<bool> {
        self.is_zero(&a.sub(b)?)
    }

    /// Product followed by reduction.
    pub fn multiply(&self, a: &RingElement<F>, b: &RingElement<F>) -> Result<RingElement<F>> {
        self.normal_form(&a.mul(b)?)
    }

    /// Elements of the computed Gröbner basis.
    pub fn groebner_basis(&self) -> Vec<RingElement<F>> {
        let b = self.basis();
        (0..b.len())
            .map(|i| RingElement::from_poly(self.universe(), b.element(i)))
            .collect()
    }

    fn walk_standard(&self, d: u32, mut visit: impl FnMut(&Monomial)) {
        let u = self.universe();
        let weights = u.weights();
        let basis = self.basis();
        fn rec<F: Field>(
            m: &Monomial,
            start: usize,
            left: u32,
            weights: &[u32],
            basis: &Basis<F>,
            visit: &mut dyn FnMut(&Monomial),
        ) {
            if left == 0 {
                visit(m);
                return;
            }
            for v in start..weights.len() {
                if weights[v] > left {
                    continue;
                }
                let next = m.mul(&Monomial::variable(weights.len(), v, weights[v]));
                if basis.is_reducible(&next) {
                    continue;
                }
                rec(&next, v, left - weights[v], weights, basis, visit);
            }
        }
        let one = Monomial::one(u.len());
        if !basis.is_reducible(&one) {
            rec(&one, 0, d, &weights, basis, &mut visit);
        }
    }

    /// Dimension of the degree-`d` piece.
    pub fn graded_dimension(&self, d: u32) -> Result<usize> {
        self.check_degree(d)?;
        let mut n = 0;
        self.walk_standard(d, |_| n += 1);
        Ok(n)
    }

    /// Standard monomials of degree `d`: a basis of the degree-`d` piece.
    pub fn standard_monomials(&self, d: u32) -> Result<Vec<RingElement<F>>> {
        self.check_degree(d)?;
        let mut out = Vec::new();
        let u = self.universe().clone();
        self.walk_standard(d, |m| {
            let mut p = Poly::new();
            p.insert(m.clone(), F::one());
            out.push(RingElement::from_poly(&u, p));
        });
        Ok(out)
    }

    /// Dimensions in degrees `0, s, 2s, ... <= dmax` where `s` is the grade step.
    pub fn hilbert_function(&self, dmax: u32) -> Result<HilbertFunction> {
        self.check_degree(dmax)?;
        let step = self.grade_step();
        (0..=dmax)
            .step_by(step as usize)
            .map(|d| {
                Ok(HilbertEntry {
                    degree: d,
                    dimension: self.graded_dimension(d)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(HilbertFunction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Gf2;
    use crate::exactalg::ring::Generator;
    use num_rational::BigRational;

    #[test]
    fn projective_line_like_ring() {
        // three degree-2 generators, all equal, pairwise products zero
        let u = Universe::new((0..3).map(|i| Generator::new(format!("a{i}"), 2)).collect()).unwrap();
        let g = |i| RingElement::<BigRational>::generator(&u, i).unwrap();
        let rels = vec![
            g(0).sub(&g(1)).unwrap(),
            g(1).sub(&g(2)).unwrap(),
            g(0).mul(&g(1)).unwrap(),
            g(0).mul(&g(2)).unwrap(),
            g(1).mul(&g(2)).unwrap(),
        ];
        let q = QuotientRing::new(Presentation::new(u.clone(), rels.clone(), 2).unwrap());
        assert_eq!(q.hilbert_function(2).unwrap().dimensions(), vec![1, 1]);
        for r in &rels[..2] {
            assert!(q.is_zero(r).unwrap());
        }
        assert_eq!(q.grade_step(), 2);
        assert!(matches!(
            q.normal_form(&g(0).mul(&g(0)).unwrap()),
            Err(Error::DegreeBound { degree: 4, bound: 2 })
        ));
        let wider = q.with_degree_bound(4);
        assert_eq!(wider.graded_dimension(4).unwrap(), 0);
        let nf = q.normal_form(&g(2)).unwrap();
        assert_eq!(q.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn rejects_inhomogeneous_relations() {
        let u = Universe::new(vec![Generator::new("x", 1)]).unwrap();
        let x = RingElement::<Gf2>::generator(&u, 0).unwrap();
        let r = x.add(&RingElement::one(&u)).unwrap();
        assert!(matches!(Presentation::new(u, vec![r], 3), Err(Error::Inhomogeneous)));
    }
}
