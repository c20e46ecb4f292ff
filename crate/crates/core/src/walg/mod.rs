//! Finite-dimensional algebras by structure constants, weak Hopf
//! costructures, the groupoid algebra KG and its dual KG*.

mod algebra;
mod groupoid_algebra;
mod hopf;

pub use algebra::{format_element, Element, FinAlgebra};
pub use groupoid_algebra::{dual_label, dual_weak_hopf, groupoid_algebra, kg_label, transpose_dual};
pub use hopf::{CoStructure, Tensor, WeakHopf};
