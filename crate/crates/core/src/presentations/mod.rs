//! Boundary-divisor presentations and real submanifold indices.

mod boundary;
mod real_index;

pub use boundary::{
    boundary_partitions, generator_token, keel_presentation, krasnov_presentation, BoundaryFlavor, BoundaryRing,
};
pub use real_index::{is_orientable_space, validate_real_index, RealSubmanifoldIndex};
