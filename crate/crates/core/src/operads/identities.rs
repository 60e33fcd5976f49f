use serde::{Deserialize, Serialize};

use super::bicolored::{circ, BicoloredElement, Color};
use super::compose::{full_compose, iterated_compose};
use super::sum::{Flavor, Stratum, StrataSum};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::presentations::{BoundaryFlavor, BoundaryRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityVerdict {
    Holds,
    Fails,
    /// A side is not defined: some input color does not match an output.
    Undefined,
}

impl IdentityVerdict {
    fn compare<T: PartialEq>(a: &T, b: &T) -> Self {
        if a == b {
            IdentityVerdict::Holds
        } else {
            IdentityVerdict::Fails
        }
    }
}

fn defined<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::ColorMismatch { .. } | Error::SlotOutOfRange { .. } | Error::Composition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn verdict<T: PartialEq>(lhs: Result<T>, rhs: Result<T>) -> Result<IdentityVerdict> {
    Ok(match (defined(lhs)?, defined(rhs)?) {
        (Some(a), Some(b)) => IdentityVerdict::compare(&a, &b),
        _ => IdentityVerdict::Undefined,
    })
}

/// Sequential associativity with the color-dependent shift:
/// `x ∘_i (y ∘_j z)` against `(x ∘_i y) ∘_{j+i-1} z` when `out(y) = out(z)`
/// and `(x ∘_i y) ∘_{j+|x|₊} z` otherwise.
pub fn check_sequential(
    x: &BicoloredElement,
    y: &BicoloredElement,
    z: &BicoloredElement,
    i: usize,
    j: usize,
) -> Result<IdentityVerdict> {
    let (lhs, rhs) = sides_sequential(x, y, z, i, j);
    verdict(lhs, rhs)
}

type Sides = (Result<BicoloredElement>, Result<BicoloredElement>);

fn sides_sequential(x: &BicoloredElement, y: &BicoloredElement, z: &BicoloredElement, i: usize, j: usize) -> Sides {
    let lhs = circ(y, j, z).and_then(|yz| circ(x, i, &yz));
    let shift = if y.out() == z.out() { j + i - 1 } else { j + x.arity_plus() };
    let rhs = circ(x, i, y).and_then(|xy| circ(&xy, shift, z));
    (lhs, rhs)
}

fn sides_parallel(x: &BicoloredElement, y: &BicoloredElement, z: &BicoloredElement, i: usize, j: usize) -> Sides {
    let lhs = circ(x, i, y).and_then(|xy| circ(&xy, j + y.arity() - 1, z));
    let shift = match y.out() {
        Color::Plus => i,
        Color::Real => i + z.arity_plus(),
    };
    let rhs = circ(x, j, z).and_then(|xz| circ(&xz, shift, y));
    (lhs, rhs)
}

/// Parallel associativity with the color-dependent shift, for `i < j`:
/// `(x ∘_i y) ∘_{j+|y|-1} z` against `(x ∘_j z) ∘_i y` when `out(y) = +`
/// and `(x ∘_j z) ∘_{i+|z|₊} y` when `out(y) = ℝ`.
pub fn check_parallel(
    x: &BicoloredElement,
    y: &BicoloredElement,
    z: &BicoloredElement,
    i: usize,
    j: usize,
) -> Result<IdentityVerdict> {
    if i == 0 || i >= j || j > x.arity() {
        return Ok(IdentityVerdict::Undefined);
    }
    let (lhs, rhs) = sides_parallel(x, y, z, i, j);
    verdict(lhs, rhs)
}

/// Renumbers the pairs of every real stratum in `s`.
fn permute_pairs(s: &StrataSum, perm: &[usize]) -> Result<StrataSum> {
    let mut out = StrataSum::zero(s.flavor())?;
    for (t, c) in s.terms() {
        let t = match t {
            Stratum::Real(r) => Stratum::Real(r.permute_pairs(perm)?),
            other => other.clone(),
        };
        out.add_term(t, c.clone())?;
    }
    Ok(out)
}

/// Whether the two sides of the parallel identity agree once the pair
/// blocks contributed by `y` and `z` are put in the same order.
///
/// When `y` and `z` are both real, the left side lists the pairs of `x`,
/// then `y`, then `z`, while the right side lists `x`, `z`, `y`. Returns
/// `None` when the identity is undefined.
pub fn pair_block_swap_parallel(
    x: &BicoloredElement,
    y: &BicoloredElement,
    z: &BicoloredElement,
    i: usize,
    j: usize,
) -> Result<Option<bool>> {
    if i == 0 || i >= j || j > x.arity() {
        return Ok(None);
    }
    let (lhs, rhs) = sides_parallel(x, y, z, i, j);
    let (Some(lhs), Some(rhs)) = (defined(lhs)?, defined(rhs)?) else {
        return Ok(None);
    };
    if y.out() != Color::Real {
        return Ok(Some(lhs == rhs));
    }
    let (bx, by, bz) = (x.arity_plus(), y.arity_plus(), z.arity_plus());
    let perm: Vec<usize> = (1..=bx + by + bz)
        .map(|p| match p {
            p if p <= bx => p,
            p if p <= bx + bz => p + by,
            p => p - bz,
        })
        .collect();
    Ok(Some(lhs.sum() == &permute_pairs(rhs.sum(), &perm)?))
}

/// Unit laws: `x ∘_i 1 = x` with the unit of color `in_i(x)`, and
/// `1 ∘_1 x = x` with the unit of color `out(x)`.
pub fn check_units(x: &BicoloredElement, i: usize) -> Result<IdentityVerdict> {
    let color = match defined(x.in_slot(i))? {
        Some(c) => c,
        None => return Ok(IdentityVerdict::Undefined),
    };
    let right = circ(x, i, &BicoloredElement::unit(color))?;
    let left = circ(&BicoloredElement::unit(x.out()), 1, x)?;
    Ok(if &right == x && &left == x {
        IdentityVerdict::Holds
    } else {
        IdentityVerdict::Fails
    })
}

/// Direct simultaneous gluing against the right-to-left iterated expansion.
pub fn check_expansion(x: &StrataSum, ys: &[StrataSum]) -> Result<IdentityVerdict> {
    let direct = match full_compose(x, ys) {
        Err(Error::Arity(_)) => return Ok(IdentityVerdict::Undefined),
        r => r,
    };
    verdict(direct, iterated_compose(x, ys))
}

fn all_complex(xs: &[&BicoloredElement]) -> bool {
    xs.iter().all(|x| x.out() == Color::Plus)
}

/// Unmodified sequential associativity,
/// `x ∘_i (y ∘_j z) = (x ∘_i y) ∘_{i+j-1} z`, on complex elements.
pub fn check_classical_sequential(
    x: &BicoloredElement,
    y: &BicoloredElement,
    z: &BicoloredElement,
    i: usize,
    j: usize,
) -> Result<IdentityVerdict> {
    if !all_complex(&[x, y, z]) {
        return Ok(IdentityVerdict::Undefined);
    }
    let lhs = circ(y, j, z).and_then(|yz| circ(x, i, &yz));
    let rhs = circ(x, i, y).and_then(|xy| circ(&xy, i + j - 1, z));
    verdict(lhs, rhs)
}

/// Unmodified parallel associativity,
/// `(x ∘_i y) ∘_{j+|y|-1} z = (x ∘_j z) ∘_i y` for `i < j`, on complex
/// elements.
pub fn check_classical_parallel(
    x: &BicoloredElement,
    y: &BicoloredElement,
    z: &BicoloredElement,
    i: usize,
    j: usize,
) -> Result<IdentityVerdict> {
    if !all_complex(&[x, y, z]) || i == 0 || i >= j {
        return Ok(IdentityVerdict::Undefined);
    }
    let lhs = circ(x, i, y).and_then(|xy| circ(&xy, j + y.arity() - 1, z));
    let rhs = circ(x, j, z).and_then(|xz| circ(&xz, i, y));
    verdict(lhs, rhs)
}

/// Poincaré dual of a complex sum of arity `n`: the combination of the
/// products of edge divisors in the Keel ring on `n + 1` points.
pub fn pd_class(ring: &BoundaryRing<Rational>, s: &StrataSum) -> Result<crate::exactalg::RingElement<Rational>> {
    let n = match s.flavor() {
        Flavor::Complex(n) if n >= 2 => n,
        f => return Err(Error::Composition(format!("{f} has no Keel presentation"))),
    };
    if ring.flavor() != BoundaryFlavor::Keel || ring.points() != n + 1 {
        return Err(Error::Arity(format!(
            "{} needs the Keel ring on {} points",
            s.flavor(),
            n + 1
        )));
    }
    let mut acc = crate::exactalg::RingElement::zero(ring.universe());
    for (t, c) in s.terms() {
        if let Stratum::Complex(t) = t {
            acc = acc.add(&ring.strata_class(t)?.scale(c))?;
        }
    }
    Ok(acc)
}

/// Equality of complex sums in homology, decided by comparing normal forms
/// of their Poincaré duals. Scalars compare directly.
pub fn equal_up_to_relations(ring: &BoundaryRing<Rational>, a: &StrataSum, b: &StrataSum) -> Result<bool> {
    if a.flavor() != b.flavor() {
        return Ok(false);
    }
    if a.flavor().is_scalar() {
        return Ok(a == b);
    }
    let d = pd_class(ring, &a.sub(b)?)?;
    ring.ring().is_zero(&d)
}
