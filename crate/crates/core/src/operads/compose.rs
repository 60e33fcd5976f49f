use num_rational::BigRational;
use num_traits::One;

use super::sum::{Flavor, Stratum, StrataSum};
use crate::error::{Error, Result};
use crate::trees::{ComplexStableTree, RealStableTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// The guest is a scalar: multiply the host.
    ScaleHost,
    /// The host is a scalar: multiply the guest.
    ScaleGuest,
    Complex,
    RealAtReal,
    ComplexAtPair,
}

fn mismatch(x: Flavor, y: Flavor, why: &str) -> Error {
    Error::Composition(format!("cannot compose {y} into {x}: {why}"))
}

fn check_slot(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        Err(Error::SlotOutOfRange { slot: i, max })
    } else {
        Ok(())
    }
}

/// Result flavor of `x ∘_i y` and how to compute it.
///
/// Slots are counted within the kind of input they refer to: a complex `y`
/// goes into pair `i` of a real `x`, a real `y` into real point `i`.
fn plan(x: Flavor, i: usize, y: Flavor) -> Result<(Mode, Flavor)> {
    match (x, y) {
        (Flavor::Complex(k), Flavor::Complex(l)) => {
            check_slot(i, k)?;
            Ok(if l == 1 {
                (Mode::ScaleHost, x)
            } else if k == 1 {
                (Mode::ScaleGuest, y)
            } else {
                (Mode::Complex, Flavor::Complex(k + l - 1))
            })
        }
        (Flavor::Complex(_), _) => Err(mismatch(x, y, "complex inputs take complex elements")),
        (Flavor::Real { inputs, pairs }, Flavor::Complex(l)) => {
            check_slot(i, pairs)?;
            Ok(if l == 1 {
                (Mode::ScaleHost, x)
            } else {
                (
                    Mode::ComplexAtPair,
                    Flavor::Real {
                        inputs,
                        pairs: pairs + l - 1,
                    },
                )
            })
        }
        (Flavor::Real { inputs, pairs }, Flavor::Real { inputs: a2, pairs: b2 }) => {
            check_slot(i, inputs)?;
            Ok(if y.is_scalar() {
                (Mode::ScaleHost, x)
            } else if x.is_scalar() {
                (Mode::ScaleGuest, y)
            } else {
                (
                    Mode::RealAtReal,
                    Flavor::Real {
                        inputs: inputs + a2 - 1,
                        pairs: pairs + b2,
                    },
                )
            })
        }
        (Flavor::Real { .. }, Flavor::Conjugate(_)) => Err(mismatch(x, y, "curves without real points have no real output")),
        (Flavor::Conjugate(k), Flavor::Complex(l)) => {
            check_slot(i, k)?;
            Ok(if l == 1 {
                (Mode::ScaleHost, x)
            } else {
                (Mode::ComplexAtPair, Flavor::Conjugate(k + l - 1))
            })
        }
        (Flavor::Conjugate(_), _) => Err(mismatch(x, y, "pairs take complex elements")),
    }
}

/// Flavor of `x ∘_i y`, or why it is undefined.
pub fn composed_flavor(x: Flavor, i: usize, y: Flavor) -> Result<Flavor> {
    plan(x, i, y).map(|(_, f)| f)
}

fn glue_pair(host: &Stratum, i: usize, guest: &Stratum) -> Result<Stratum> {
    let out = match (host, guest) {
        (Stratum::Complex(a), Stratum::Complex(b)) => Stratum::Complex(a.glue(i, b)?),
        (Stratum::Real(a), Stratum::Real(b)) => Stratum::Real(a.glue_real(i, b)?),
        (Stratum::Real(a), Stratum::Complex(b)) if a.reals() == 0 => Stratum::Real(a.glue_conjugate(i, b)?),
        (Stratum::Real(a), Stratum::Complex(b)) => Stratum::Real(a.glue_complex(i, b)?),
        _ => return Err(Error::Composition("strata of incompatible kinds".into())),
    };
    Ok(out)
}

/// `x ∘_i y`, extended bilinearly from the gluing of strata.
///
/// Complex elements compose at complex slots `i ∈ [n]`; a real element of
/// flavor `Real { inputs, pairs }` takes complex elements at pairs
/// `i ∈ [pairs]` and real elements at real points `i ∈ [inputs]`; a
/// conjugate element takes complex elements at its input pairs. Scalars act
/// by multiplication.
pub fn partial_compose(x: &StrataSum, i: usize, y: &StrataSum) -> Result<StrataSum> {
    let (mode, flavor) = plan(x.flavor(), i, y.flavor())?;
    match mode {
        Mode::ScaleHost => Ok(x.scale(&y.as_scalar().expect("scalar guest"))),
        Mode::ScaleGuest => Ok(y.scale(&x.as_scalar().expect("scalar host"))),
        _ => {
            let mut out = StrataSum::zero(flavor)?;
            for (s, c) in x.terms() {
                for (t, d) in y.terms() {
                    out.add_term(glue_pair(s, i, t)?, c * d)?;
                }
            }
            Ok(out)
        }
    }
}

/// Cartesian product of the term lists, with multiplied coefficients.
fn expand<'a>(lists: &[Vec<(&'a Stratum, &'a BigRational)>]) -> Vec<(Vec<&'a Stratum>, BigRational)> {
    let mut acc: Vec<(Vec<&Stratum>, BigRational)> = vec![(Vec::new(), BigRational::one())];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for (picked, c) in &acc {
            for (s, d) in list {
                let mut p = picked.clone();
                p.push(*s);
                next.push((p, c * *d));
            }
        }
        acc = next;
    }
    acc
}

fn as_complex(s: &Stratum) -> Option<&ComplexStableTree> {
    match s {
        Stratum::Complex(t) => Some(t),
        _ => None,
    }
}

fn as_real(s: &Stratum) -> Option<&RealStableTree> {
    match s {
        Stratum::Real(t) => Some(t),
        _ => None,
    }
}

/// `x ∘ (y_1, ..., y_k)`, computed by gluing at every input at once.
///
/// For a real `x` the `ys` either fill all pairs with complex elements or all
/// real inputs with real elements.
pub fn full_compose(x: &StrataSum, ys: &[StrataSum]) -> Result<StrataSum> {
    let arity_error = |want: usize| Error::Arity(format!("{} takes {want} elements, got {}", x.flavor(), ys.len()));
    let all_complex = ys.iter().all(|y| matches!(y.flavor(), Flavor::Complex(_)));
    let all_real = ys.iter().all(|y| matches!(y.flavor(), Flavor::Real { .. }));
    let complex_total: usize = ys
        .iter()
        .map(|y| match y.flavor() {
            Flavor::Complex(l) => l,
            _ => 0,
        })
        .sum();

    #[derive(Clone, Copy)]
    enum Kind {
        Complex,
        Pairs,
        Reals,
    }
    let (kind, flavor) = match x.flavor() {
        Flavor::Complex(k) => {
            if ys.len() != k {
                return Err(arity_error(k));
            }
            if !all_complex {
                return Err(Error::Composition("complex inputs take complex elements".into()));
            }
            (Kind::Complex, Flavor::Complex(complex_total))
        }
        Flavor::Real { inputs, pairs } => {
            if all_complex && ys.len() == pairs {
                (
                    Kind::Pairs,
                    Flavor::Real {
                        inputs,
                        pairs: complex_total,
                    },
                )
            } else if all_real && ys.len() == inputs {
                let (a, b) = ys.iter().fold((0, pairs), |(a, b), y| match y.flavor() {
                    Flavor::Real { inputs, pairs } => (a + inputs, b + pairs),
                    _ => unreachable!(),
                });
                (Kind::Reals, Flavor::Real { inputs: a, pairs: b })
            } else if !all_complex && !all_real {
                return Err(Error::Composition("a real element takes all complex or all real elements".into()));
            } else {
                return Err(arity_error(if all_complex { pairs } else { inputs }));
            }
        }
        Flavor::Conjugate(k) => {
            if ys.len() != k {
                return Err(arity_error(k));
            }
            if !all_complex {
                return Err(Error::Composition("pairs take complex elements".into()));
            }
            (Kind::Pairs, Flavor::Conjugate(complex_total))
        }
    };

    if x.flavor().is_scalar() && ys.len() == 1 {
        return Ok(ys[0].scale(&x.as_scalar().expect("scalar host")));
    }
    let mut lists = vec![x.terms().collect::<Vec<_>>()];
    lists.extend(ys.iter().map(|y| y.terms().collect::<Vec<_>>()));
    let mut out = StrataSum::zero(flavor)?;
    for (picked, c) in expand(&lists) {
        let (host, guests) = (picked[0], &picked[1..]);
        let glued = match (kind, host) {
            (_, Stratum::Unit) => Stratum::Unit,
            (Kind::Complex, Stratum::Complex(t)) => {
                let g: Vec<_> = guests.iter().map(|s| as_complex(s)).collect();
                Stratum::Complex(t.glue_all(&g)?)
            }
            (Kind::Pairs, Stratum::Real(t)) => {
                let g: Vec<_> = guests.iter().map(|s| as_complex(s)).collect();
                Stratum::Real(t.glue_all_complex(&g)?)
            }
            (Kind::Reals, Stratum::Real(t)) => {
                let g: Vec<_> = guests.iter().map(|s| as_real(s)).collect();
                Stratum::Real(t.glue_all_real(&g)?)
            }
            _ => return Err(Error::Composition("strata of incompatible kinds".into())),
        };
        out.add_term(glued, c)?;
    }
    Ok(out)
}

/// `x ∘ (y_1, ..., y_k)` as iterated partial compositions, last slot first,
/// with the slot indices of each step as in the right-to-left expansion.
pub fn iterated_compose(x: &StrataSum, ys: &[StrataSum]) -> Result<StrataSum> {
    let mut acc = x.clone();
    for (s, y) in ys.iter().enumerate().rev() {
        acc = partial_compose(&acc, s + 1, y)?;
    }
    Ok(acc)
}
