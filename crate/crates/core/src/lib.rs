//! Cohomology rings and operadic gluing maps of the Deligne–Mumford moduli
//! spaces of marked rational curves, complex and real.
//!
//! * [`labels`]: two-block partitions and gluing relabelings.
//! * [`trees`]: dual graphs of boundary strata and their gluings.
//! * [`exactalg`]: exact graded polynomial algebra, Gröbner normal forms and a
//!   Macaulay-matrix rank oracle.
//! * [`presentations`]: the boundary-divisor presentations and related classes.
//! * [`operads`]: formal sums of strata with partial and full compositions and
//!   the bicolored wrapper.

pub mod error;
pub mod exactalg;
pub mod labels;
pub mod operads;
pub mod presentations;
pub mod trees;

pub use error::{Error, Result};
pub use labels::{glue_label_maps, LabelMap, LabelSet, Partition2};
pub use trees::{ComplexStableTree, RealLabel, RealStableTree};
