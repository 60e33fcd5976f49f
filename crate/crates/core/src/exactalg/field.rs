use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which coefficient field a ring is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Gf2,
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Rational => "q",
            FieldKind::Gf2 => "gf2",
        })
    }
}

/// Exact coefficient field.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    const KIND: FieldKind;

    /// Domain used by fraction-free elimination.
    type Integral: FractionFree;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; the caller guarantees `self` is nonzero.
    fn inv(&self) -> Self;

    fn from_rational(q: &BigRational) -> Result<Self>;
    fn to_rational(&self) -> BigRational;

    /// Scales a row of coefficients to an integral row with the same span.
    fn integral_row(coeffs: &[Self]) -> Vec<Self::Integral>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers exist in every field")
    }
}

/// Integral domain operations needed by fraction-free row reduction.
pub trait FractionFree: Clone + PartialEq + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Divides a row by the gcd of its entries.
    fn remove_content(row: &mut [(usize, Self)]);
}

impl Field for BigRational {
    const KIND: FieldKind = FieldKind::Rational;
    type Integral = BigInt;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(q: &BigRational) -> Result<Self> {
        Ok(q.clone())
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn integral_row(coeffs: &[Self]) -> Vec<BigInt> {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    }
}

impl FractionFree for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn remove_content(row: &mut [(usize, Self)]) {
        let mut g = BigInt::zero();
        for (_, c) in row.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if row.first().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !Zero::is_zero(&g) && !g.is_one() {
            for (_, c) in row.iter_mut() {
                *c = &*c / &g;
            }
        }
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Gf2(pub bool);

impl Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Field for Gf2 {
    const KIND: FieldKind = FieldKind::Gf2;
    type Integral = Gf2;

    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0, "inverse of zero");
        *self
    }
    fn from_rational(q: &BigRational) -> Result<Self> {
        let two = BigInt::from(2);
        if q.denom().is_even() {
            return Err(Error::BadCoefficient(q.to_string()));
        }
        Ok(Gf2(q.numer().mod_floor(&two).is_one()))
    }
    fn to_rational(&self) -> BigRational {
        if self.0 {
            One::one()
        } else {
            Zero::zero()
        }
    }
    fn integral_row(coeffs: &[Self]) -> Vec<Gf2> {
        coeffs.to_vec()
    }
}

impl FractionFree for Gf2 {
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn remove_content(_row: &mut [(usize, Self)]) {}
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gf2_reduction_of_rationals() {
        assert_eq!(Gf2::from_rational(&q(3, 5)).unwrap(), Gf2(true));
        assert_eq!(Gf2::from_rational(&q(-4, 3)).unwrap(), Gf2(false));
        assert!(Gf2::from_rational(&q(1, 2)).is_err());
    }

    #[test]
    fn integral_rows_clear_denominators() {
        let row = BigRational::integral_row(&[q(1, 2), q(-2, 3)]);
        assert_eq!(row, vec![BigInt::from(3), BigInt::from(-4)]);
        let mut r = vec![(0, BigInt::from(-6)), (3, BigInt::from(9))];
        BigInt::remove_content(&mut r);
        assert_eq!(r, vec![(0, BigInt::from(2)), (3, BigInt::from(-3))]);
    }
}
