//! Exact integral cohomology of Grassmannians, partial flag manifolds and the
//! spaces `Hol₁(Gr(n,m))` / `Rat₁(Gr(n,m))` of degree-one holomorphic maps.
//!
//! The pipeline is:
//!
//! 1. [`spaces`] produces presentations of cohomology rings of flag manifolds
//!    as quotients of polynomial rings on Chern classes;
//! 2. [`quotient_ring`] turns a presentation into a free basis in every degree,
//!    with reduction maps and cup-product matrices;
//! 3. [`char_classes`] computes Euler classes of the relevant sphere bundles;
//! 4. [`gysin`] runs the split Gysin sequence and reads off kernels and
//!    cokernels with [`exact_linalg`].
//!
//! All arithmetic is over unbounded integers.

pub mod char_classes;
pub mod cli;
mod error;
pub mod exact_linalg;
pub mod graded_poly;
pub mod gysin;
pub mod quotient_ring;
pub mod spaces;

pub use error::{Error, Result};
