//! The 3×3 matrix algebra over an arbitrary scalar domain, and linear
//! subspaces of it.

mod mat3;
mod subspace;

pub use mat3::{Mat3, COORD_NAMES};
pub use subspace::{Closure, Subspace};
