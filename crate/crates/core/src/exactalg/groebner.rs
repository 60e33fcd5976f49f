//! Degree-by-degree Buchberger completion for homogeneous ideals.

use std::collections::HashMap;

use super::field::Field;
use super::ring::{poly_add_scaled, Monomial, Poly};

fn support(m: &Monomial) -> u128 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (v, &e)| if e > 0 && v < 128 { acc | 1 << v } else { acc })
}

/// A monic Gröbner basis, valid through `bound`.
#[derive(Debug, Clone)]
pub(crate) struct Basis<F: Field> {
    pub lms: Vec<Monomial>,
    supports: Vec<u128>,
    by_lm: HashMap<Monomial, usize>,
    weights: Vec<u32>,
    /// Each element minus its leading monomial.
    pub tails: Vec<Poly<F>>,
    wide: bool,
}

impl<F: Field> Basis<F> {
    fn new(weights: &[u32]) -> Self {
        let vars = weights.len();
        Basis {
            lms: Vec::new(),
            supports: Vec::new(),
            by_lm: HashMap::new(),
            weights: weights.to_vec(),
            tails: Vec::new(),
            wide: vars > 128,
        }
    }

    pub fn len(&self) -> usize {
        self.lms.len()
    }

    pub fn reducer(&self, m: &Monomial) -> Option<usize> {
        // Low-degree monomials have few divisors; look those up directly.
        let divisors: usize = m
            .exponents()
            .iter()
            .try_fold(1usize, |acc, &e| acc.checked_mul(e as usize + 1))
            .unwrap_or(usize::MAX);
        if divisors <= self.lms.len() {
            return self.reducer_by_divisors(m);
        }
        let s = support(m);
        (0..self.lms.len()).find(|&i| {
            (self.wide || self.supports[i] & !s == 0) && self.lms[i].divides(m)
        })
    }

    fn reducer_by_divisors(&self, m: &Monomial) -> Option<usize> {
        let vars: Vec<usize> = (0..m.exponents().len()).filter(|&v| m.exponents()[v] > 0).collect();
        let mut exps = vec![0u8; m.exponents().len()];
        fn rec<F: Field>(
            b: &Basis<F>,
            m: &Monomial,
            vars: &[usize],
            at: usize,
            exps: &mut Vec<u8>,
            degree: u32,
        ) -> Option<usize> {
            if at == vars.len() {
                let probe = Monomial::from_parts(exps.clone().into_boxed_slice(), degree);
                return b.by_lm.get(&probe).copied();
            }
            let v = vars[at];
            for e in 0..=m.exponents()[v] {
                exps[v] = e;
                if let Some(i) = rec(b, m, vars, at + 1, exps, degree + e as u32 * b.weights[v]) {
                    exps[v] = 0;
                    return Some(i);
                }
            }
            exps[v] = 0;
            None
        }
        rec(self, m, &vars, 0, &mut exps, 0)
    }

    /// Whether some leading monomial divides `m`.
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.reducer(m).is_some()
    }

    /// Fully reduced remainder of `f`.
    pub fn reduce(&self, mut f: Poly<F>) -> Poly<F> {
        let mut rem = Poly::new();
        while let Some((m, c)) = f.pop_last() {
            match self.reducer(&m) {
                Some(i) => {
                    let q = self.lms[i].quotient_of(&m);
                    poly_add_scaled(&mut f, &self.tails[i], &c.neg(), Some(&q));
                }
                None => {
                    rem.insert(m, c);
                }
            }
        }
        rem
    }

    fn push(&mut self, mut f: Poly<F>) {
        let (lm, lc) = f.pop_last().expect("nonzero");
        let inv = lc.inv();
        for c in f.values_mut() {
            *c = c.mul(&inv);
        }
        self.supports.push(support(&lm));
        self.by_lm.insert(lm.clone(), self.lms.len());
        self.lms.push(lm);
        self.tails.push(f);
    }

    /// Eliminates the newest leading monomial from the tails of `earlier`.
    fn substitute_newest(&mut self, earlier: &[usize]) {
        let h = self.lms.len() - 1;
        let (head, last) = self.tails.split_at_mut(h);
        let lm = &self.lms[h];
        for &i in earlier {
            if let Some(c) = head[i].remove(lm) {
                poly_add_scaled(&mut head[i], &last[0], &c.neg(), None);
            }
        }
    }

    pub fn element(&self, i: usize) -> Poly<F> {
        let mut p = self.tails[i].clone();
        p.insert(self.lms[i].clone(), F::one());
        p
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update after appending basis element `h`.
fn update<F: Field>(basis: &Basis<F>, pairs: &mut Vec<Pair>, h: usize, weights: &[u32], bound: u32) {
    let lh = &basis.lms[h];
    let mut fresh: Vec<(Pair, bool)> = (0..h)
        .map(|g| {
            let lcm = basis.lms[g].lcm(lh, weights);
            let coprime = basis.lms[g].coprime(lh);
            (Pair { i: g, j: h, lcm }, coprime)
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(Pair, bool)> = Vec::new();
    while let Some((p, coprime)) = fresh.pop() {
        let dominated = |q: &(Pair, bool)| q.0.lcm.divides(&p.lcm);
        if coprime || (!fresh.iter().any(dominated) && !kept.iter().any(dominated)) {
            kept.push((p, coprime));
        }
    }

    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && basis.lms[p.i].lcm(lh, weights) != p.lcm
            && basis.lms[p.j].lcm(lh, weights) != p.lcm)
    });
    pairs.extend(
        kept.into_iter()
            .filter(|(p, coprime)| !coprime && p.lcm.degree() <= bound)
            .map(|(p, _)| p),
    );
}

fn s_poly<F: Field>(basis: &Basis<F>, p: &Pair) -> Poly<F> {
    let qi = basis.lms[p.i].quotient_of(&p.lcm);
    let qj = basis.lms[p.j].quotient_of(&p.lcm);
    let mut s = Poly::new();
    poly_add_scaled(&mut s, &basis.tails[p.i], &F::one(), Some(&qi));
    poly_add_scaled(&mut s, &basis.tails[p.j], &F::one().neg(), Some(&qj));
    s
}

/// Completes homogeneous `gens` to a basis that is valid in every degree up
/// to and including `bound`. Inputs above the bound are ignored.
pub(crate) fn complete<F: Field>(weights: &[u32], gens: &[Poly<F>], bound: u32) -> Basis<F> {
    let mut basis = Basis::new(weights);
    let mut pairs: Vec<Pair> = Vec::new();
    let mut by_degree: Vec<Vec<&Poly<F>>> = vec![Vec::new(); bound as usize + 1];
    for g in gens {
        if let Some((m, _)) = g.last_key_value() {
            if m.degree() <= bound {
                by_degree[m.degree() as usize].push(g);
            }
        }
    }

    for d in 0..=bound {
        let mut work: Vec<Poly<F>> = Vec::new();
        let mut k = 0;
        while k < pairs.len() {
            if pairs[k].lcm.degree() == d {
                let p = pairs.swap_remove(k);
                work.push(s_poly(&basis, &p));
            } else {
                k += 1;
            }
        }
        work.extend(by_degree[d as usize].iter().map(|g| (*g).clone()));
        // New elements of degree d cannot create pairs of degree d, so the
        // worklist is final once collected.
        let mut same_degree: Vec<usize> = Vec::new();
        for f in work {
            let h = basis.reduce(f);
            if h.is_empty() {
                continue;
            }
            basis.push(h);
            let new = basis.len() - 1;
            basis.substitute_newest(&same_degree);
            same_degree.push(new);
            update(&basis, &mut pairs, new, weights, bound);
        }
        // keep the basis reduced: tails of this degree hold standard monomials only
        for i in 0..basis.len() {
            if basis.lms[i].degree() == d {
                let t = std::mem::take(&mut basis.tails[i]);
                basis.tails[i] = basis.reduce(t);
            }
        }
    }
    basis
}
