//! Exact computations with crossed homomorphisms of Lie algebras, Witt type
//! algebras, Lie-Rinehart algebras and their cohomology.

pub mod cohomology;
pub mod comm;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod rinehart;
pub mod scalar;
pub mod shen;
pub mod sparse;
pub mod witt;

pub use error::{Error, Result};
pub use lie::{Action, LieAlgebra, Setup};
pub use linalg::{Matrix, Vector};
pub use report::Finding;
pub use scalar::Rational;
