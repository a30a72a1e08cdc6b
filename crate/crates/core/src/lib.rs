//! Exact combinatorics of Bratteli diagrams.
//!
//! The crate models finitely presented Bratteli diagrams, premorphisms between
//! them together with their equivalence relations, bounded isomorphism search
//! with checkable intertwining certificates, the supernatural-number invariant
//! of UHF diagrams, and a class calculus for the inductive-limit `K0` group.
//! All arithmetic is exact.

pub mod diagram;
pub mod dsl;
pub mod fd_algebra;
pub mod iso;
pub mod k0;
pub mod matrix;
pub mod morphism;
mod num;
mod orbit;
pub mod uhf;

pub use diagram::{
    Diagram, DiagramError, DiagramPresentation, LevelVector, MultiplicityMatrix, PeriodicTail,
};
pub use matrix::Matrix;
pub use orbit::Refutation;
pub use morphism::{Premorphism, PremorphismWindow};

