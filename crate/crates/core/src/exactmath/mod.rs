//! Exact scalars (Q and GF(p)) and the small dense linear algebra used by
//! every other module. Nothing here uses floating point.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, Scalar};
pub use matrix::{kernel_basis, Echelon, Matrix};
pub use subspace::{subspace_contains, subspace_equal, Subspace};
