use std::fmt;

use serde::{Deserialize, Serialize};

use super::compose::partial_compose;
use super::sum::{Flavor, StrataSum};
use crate::error::{Error, Result};

/// Colors of inputs and outputs: `+` for complex, `ℝ` for real.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "R")]
    Real,
}

impl Color {
    pub fn as_str(self) -> &'static str {
        match self {
            Color::Plus => "+",
            Color::Real => "ℝ",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An element of the combined two-colored structure.
///
/// A complex sum of arity `n` has `n` inputs of color `+`. A real sum with
/// `a` real inputs and `b` pairs has arity `a + b`: inputs `1..=b` are the
/// pairs (color `+`) and inputs `b+1..=a+b` the real points in order (color
/// `ℝ`). The auxiliary grade is `a - 1` for real sums and 0 otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BicoloredElement {
    sum: StrataSum,
}

impl BicoloredElement {
    pub fn new(sum: StrataSum) -> Result<Self> {
        match sum.flavor() {
            Flavor::Conjugate(_) => Err(Error::Composition(
                "elements without a real output are not part of the two-colored structure".into(),
            )),
            _ => Ok(BicoloredElement { sum }),
        }
    }

    pub fn unit(color: Color) -> Self {
        let sum = match color {
            Color::Plus => StrataSum::unit_complex(),
            Color::Real => StrataSum::unit_real(),
        };
        BicoloredElement { sum }
    }

    pub fn sum(&self) -> &StrataSum {
        &self.sum
    }

    pub fn into_sum(self) -> StrataSum {
        self.sum
    }

    pub fn arity(&self) -> usize {
        match self.sum.flavor() {
            Flavor::Complex(n) => n,
            Flavor::Real { inputs, pairs } => inputs + pairs,
            Flavor::Conjugate(_) => unreachable!("excluded at construction"),
        }
    }

    /// Number of inputs of color `+`.
    pub fn arity_plus(&self) -> usize {
        match self.sum.flavor() {
            Flavor::Complex(n) => n,
            Flavor::Real { pairs, .. } => pairs,
            Flavor::Conjugate(_) => unreachable!("excluded at construction"),
        }
    }

    pub fn aux_grade(&self) -> usize {
        match self.sum.flavor() {
            Flavor::Real { inputs, .. } => inputs - 1,
            _ => 0,
        }
    }

    pub fn out(&self) -> Color {
        match self.sum.flavor() {
            Flavor::Complex(_) => Color::Plus,
            _ => Color::Real,
        }
    }

    pub fn in_slot(&self, i: usize) -> Result<Color> {
        if i == 0 || i > self.arity() {
            return Err(Error::SlotOutOfRange {
                slot: i,
                max: self.arity(),
            });
        }
        Ok(if i <= self.arity_plus() { Color::Plus } else { Color::Real })
    }
}

/// `x ∘_i y`, defined when `in_i(x) = out(y)`; the result has arity
/// `|x| + |y| - 1`.
pub fn circ(x: &BicoloredElement, i: usize, y: &BicoloredElement) -> Result<BicoloredElement> {
    let input = x.in_slot(i)?;
    if input != y.out() {
        return Err(Error::ColorMismatch {
            slot: i,
            input: input.as_str(),
            output: y.out().as_str(),
        });
    }
    let slot = match (x.out(), input) {
        (Color::Real, Color::Real) => i - x.arity_plus(),
        _ => i,
    };
    BicoloredElement::new(partial_compose(&x.sum, slot, &y.sum)?)
}
