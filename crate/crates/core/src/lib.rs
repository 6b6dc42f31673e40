//! Real special quasi-Clifford algebras and plug-in constructions for
//! Hadamard matrices.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod hadamard;
pub mod gf2;
pub mod monomat;
pub mod repbuild;
pub mod solver;
pub mod structure;
pub mod symplectic;

pub use algebra::{AlgebraPresentation, Sign, SignedMonomial};
pub use error::{Error, Result};
pub use structure::{classify, StructureCase, WedderburnType};
pub use symplectic::{decompose, Decomposition};
