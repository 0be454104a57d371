//! Computational workbench for finite generalized polygons and translation
//! generalized quadrangles.
//!
//! The crate builds the classical examples (the Fano plane, the symplectic
//! quadrangles `W(p)`, the quadrangles `T2(O)` of a conic), verifies the
//! polygon axioms through the incidence graph, works with Kantor families in
//! elementary abelian groups and their coset geometries, computes kernels of
//! translation quadrangles as matrix rings, and searches for endomorphisms
//! that would give injective but non-surjective self-embeddings.
//!
//! Runnable walkthroughs live in `examples/`; the `gpwb` binary exposes the
//! same operations over JSON files.

pub mod cli;
pub mod embed;
pub mod error;
pub mod groups;
pub mod incidence;
pub mod kantor;
pub mod kernel;
pub mod params;
pub mod report;

pub use error::{Error, Result};
