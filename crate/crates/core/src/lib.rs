//! Exact verification engine for weak Hopf algebras of groupoid type.
//!
//! Builds the groupoid algebra KG and its dual KG*, weak module algebras B
//! over KG, the smash products B#KG and B#KG#KG*, the skew groupoid ring of
//! the induced groupoid action, and the duality map φ into End(B#KG); then
//! checks the structural statements about ker φ and Im φ by exact linear
//! algebra over Q or GF(p).

pub mod action;
pub mod duality;
pub mod error;
pub mod exactmath;
pub mod groupoid;
pub mod instance;
pub mod report;
pub mod smash;
pub mod walg;

pub use error::{Error, Result};
