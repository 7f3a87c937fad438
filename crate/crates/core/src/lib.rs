//! Leavitt path algebras of finite graphs.
//!
//! The crate computes in `L(E)` and `L(E) ⊗ k[t, t⁻¹]` over ℚ(i) using a
//! canonical monomial basis, tracks the gauge grading, builds Bratteli data for
//! the degree-zero core, and checks pullback squares of generator-defined
//! *-homomorphisms at finite weight truncations.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod af;
pub mod basis;
pub mod cli;
pub mod diagram;
pub mod files;
pub mod grading;
pub mod graph;
pub mod hom;
pub mod linalg;
pub mod lpa;
pub mod parse;
pub mod report;
pub mod rewrite;
pub mod scalar;

pub use graph::{Graph, GraphError, GraphSpec, Path};
pub use lpa::{Element, LaurentElement, LaurentMonomial, Monomial};
pub use scalar::GaussianRational;
