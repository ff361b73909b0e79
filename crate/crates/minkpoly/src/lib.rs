//! Geometry of null hyperplanes, null polyhedra and null-faced 4-polytopes
//! in Minkowski spacetime.
//!
//! The library covers three layers:
//!
//! * [`mink`] — Minkowski linear algebra: inner products, causal
//!   classification, Levi-Civita contractions and volume normals.
//! * [`hyperplane`] / [`polyhedra`] — null hyperplanes with their quotient
//!   geometry, and the zero-volume polyhedra (tetrahedra, parallelepipeds)
//!   that live inside them with signed-area accounting.
//! * [`polytopes`] / [`tiling`] — the three null-faced 4-polytope families
//!   (4-simplex, tetrahedral diamond, parallelotope) with Gram-matrix volume
//!   identities cross-checked against a convex-hull oracle, plus the
//!   spacetime tiling by the regular parallelotope and its dual lightray
//!   lattice.
//!
//! Start with the `examples/` directory for runnable tours of each layer;
//! the `minkpoly` binary wraps the same entry points for batch use.

pub mod cli;
pub mod error;
pub mod hyperplane;
pub mod mink;
pub mod polyhedra;
pub mod polytopes;
pub mod report;
pub mod tiling;

pub use error::{GeometryError, Result};
pub use hyperplane::{HyperplaneSymmetry, NullHyperplane, PlanarImage};
pub use mink::{CausalClass, FourCovector, FourVector, Tolerance};
pub use polyhedra::{NullParallelepiped, NullTetrahedron, TetraKind, TimeSide};
