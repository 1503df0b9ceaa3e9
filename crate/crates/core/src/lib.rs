//! Exact computations on Witt type Lie algebras `V(f)` over ℚ(i): validation
//! and case classification of `f`, ½-derivation spaces, and transposed
//! Poisson structures.

pub mod algebra;
pub mod check;
pub mod derivations;
pub mod error;
pub mod exactnum;
pub mod group;
pub mod linalg;
pub mod sampling;
pub mod tpa;
pub mod wittfn;

pub use algebra::{bracket, AlgebraVector, GradedMap, LinearMap};
pub use check::{CheckReport, Verdict};
pub use error::{Error, Result};
pub use exactnum::Scalar;
pub use group::{GroupElement, GroupSpec, SubgroupTable, Window};
pub use wittfn::{CasePartition, CaseTag, WittFunction};
