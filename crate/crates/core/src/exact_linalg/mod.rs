//! Exact linear algebra over the integers.

mod echelon;
mod group;
mod matrix;
mod smith;

pub use echelon::{unit_pivot_echelon, RowLattice, UnitPivotEchelon};
pub use group::{cokernel_group, column_rank, kernel, AbelianGroup, Kernel};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
