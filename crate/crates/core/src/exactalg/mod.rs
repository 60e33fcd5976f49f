//! Exact graded commutative algebra over ℚ and GF(2).

mod field;
mod groebner;
mod macaulay;
mod quotient;
mod ring;

pub use field::{Field, FieldKind, FractionFree, Gf2};
pub use macaulay::{macaulay_rank, macaulay_stats, monomials_of_degree, MacaulayStats};
pub use quotient::{HilbertEntry, HilbertFunction, Presentation, QuotientRing};
pub use ring::{Generator, Monomial, RingElement, Universe};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
