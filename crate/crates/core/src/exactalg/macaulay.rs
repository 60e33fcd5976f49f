//! Graded dimensions by row reduction of the Macaulay matrix.
//!
//! Deliberately independent of the Gröbner code: columns are all monomials of
//! one degree, rows are every relation multiplied by every monomial of the
//! complementary degree, and the rank comes from fraction-free elimination.

use std::collections::HashMap;

use super::field::{Field, FractionFree};
use super::quotient::Presentation;
use super::ring::Monomial;
use crate::error::Result;

/// Sizes of the degree-`d` Macaulay matrix and its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MacaulayStats {
    pub monomials: usize,
    pub rows: usize,
    pub rank: usize,
}

impl MacaulayStats {
    /// Dimension of the degree-`d` piece of the quotient.
    pub fn dimension(&self) -> usize {
        self.monomials - self.rank
    }
}

/// All monomials of weighted degree exactly `d`.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], start: usize, left: u32, exps: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(exps.clone());
            return;
        }
        for v in start..weights.len() {
            if weights[v] <= left {
                exps[v] += 1;
                rec(weights, v, left - weights[v], exps, out);
                exps[v] -= 1;
            }
        }
    }
    let mut raw = Vec::new();
    rec(weights, 0, d, &mut vec![0; weights.len()], &mut raw);
    raw.into_iter()
        .map(|e| {
            let mut m = Monomial::one(weights.len());
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m = m.mul(&Monomial::variable(weights.len(), v, weights[v]));
                }
            }
            m
        })
        .collect()
}

type Row<I> = Vec<(usize, I)>;

/// `b * row - a * pivot` where `a`, `b` are the leading entries.
fn eliminate<I: FractionFree>(row: &Row<I>, pivot: &Row<I>) -> Row<I> {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, v) = if take_row {
            let r = (row[i].0, row[i].1.mul(b));
            i += 1;
            r
        } else if take_piv {
            let r = (pivot[j].0, pivot[j].1.mul(a).neg());
            j += 1;
            r
        } else {
            let r = (row[i].0, row[i].1.mul(b).sub(&pivot[j].1.mul(a)));
            i += 1;
            j += 1;
            r
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    I::remove_content(&mut out);
    out
}

/// Rank statistics of the degree-`d` Macaulay matrix of `p`.
pub fn macaulay_stats<F: Field>(p: &Presentation<F>, d: u32) -> Result<MacaulayStats> {
    let weights: Vec<u32> = p.universe().generators().iter().map(|g| g.degree).collect();
    let columns = monomials_of_degree(&weights, d);
    let col_of: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Row<F::Integral>> = Vec::new();
    for r in p.relations() {
        let Some(e) = r.degree() else { continue };
        if e > d {
            continue;
        }
        let coeffs: Vec<F> = r.terms().map(|(_, c)| c.clone()).collect();
        let ints = F::integral_row(&coeffs);
        for shift in monomials_of_degree(&weights, d - e) {
            let mut row: Row<F::Integral> = r
                .terms()
                .zip(ints.iter())
                .map(|((m, _), c)| (col_of[&m.mul(&shift)], c.clone()))
                .collect();
            row.sort_by_key(|&(c, _)| c);
            F::Integral::remove_content(&mut row);
            rows.push(row);
        }
    }
    let row_count = rows.len();
    rows.sort_by_key(|r| r.len());

    let mut pivots: HashMap<usize, Row<F::Integral>> = HashMap::new();
    for mut row in rows {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(piv) => row = eliminate(&row, piv),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Ok(MacaulayStats {
        monomials: columns.len(),
        rows: row_count,
        rank: pivots.len(),
    })
}

/// Dimension of the degree-`d` piece of the quotient presented by `p`.
pub fn macaulay_rank<F: Field>(p: &Presentation<F>, d: u32) -> Result<usize> {
    macaulay_stats(p, d).map(|s| s.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Gf2;
    use crate::exactalg::ring::{Generator, RingElement, Universe};
    use num_rational::BigRational;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[2, 2], 3).len(), 0);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
    }

    #[test]
    fn small_quotients() {
        let u = Universe::new(vec![Generator::new("x", 1), Generator::new("y", 1)]).unwrap();
        let x = RingElement::<BigRational>::generator(&u, 0).unwrap();
        let y = RingElement::<BigRational>::generator(&u, 1).unwrap();
        // (x^2 - 2 x y, y^2)
        let r1 = x.pow(2).sub(&x.mul(&y).unwrap().scale(&BigRational::from_integer(2.into()))).unwrap();
        let p = Presentation::new(u.clone(), vec![r1, y.pow(2)], 5).unwrap();
        let dims: Vec<usize> = (0..=4).map(|d| macaulay_rank(&p, d).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 1, 0, 0]);

        let x2 = RingElement::<Gf2>::generator(&u, 0).unwrap();
        let y2 = RingElement::<Gf2>::generator(&u, 1).unwrap();
        let p = Presentation::new(u, vec![x2.add(&y2).unwrap().pow(2)], 3).unwrap();
        assert_eq!(macaulay_rank(&p, 2).unwrap(), 2);
    }
}
