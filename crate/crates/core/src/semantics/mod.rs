//! Structural congruence, reduction, and bounded exploration.

mod canonical;
mod explore;
mod reduce;

pub use canonical::{canonicalize, normalize, struct_eq, CanonicalForm, PERMUTATION_CAP};
pub use explore::{explore, explore_form, succeeds, Limits, ReductionGraph, Success};
pub use reduce::{redexes, step, successors, Redex, Site, StepError};
