//! Formal sums of strata with the partial and full compositions, the
//! two-colored wrapper and checks of the composition identities.

mod bicolored;
mod compose;
mod identities;
mod sum;
pub mod sweep;

pub use bicolored::{circ, BicoloredElement, Color};
pub use compose::{composed_flavor, full_compose, iterated_compose, partial_compose};
pub use identities::{
    check_sequential, check_parallel, check_classical_sequential, check_classical_parallel, check_expansion, check_units,
    equal_up_to_relations, pair_block_swap_parallel, pd_class, IdentityVerdict,
};
pub use sum::{Flavor, Stratum, StrataSum};
pub use sweep::{sweep, Identity, SweepReport};
