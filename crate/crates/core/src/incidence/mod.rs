//! Finite point-line geometries: construction, incidence-graph invariants,
//! generalized polygon verification, subgeometries and isomorphism search.

mod geometry;
mod graph;
mod iso;
mod polygon;
mod sub;

pub use geometry::{default_line_name, fano_plane, grid, ordinary_polygon, GeometryFile, IncidenceGeometry};
pub use graph::{collinearity_graph, girth_and_diameter, IncidenceGraph, Length, SimpleGraph};
pub use iso::{
    automorphisms, automorphisms_of, isomorphic, pinned_isomorphisms, GeomMorphism, Pin, SearchMode,
};
pub use polygon::{axiom_ii_by_cycles, verify_gp, weak_polygon_gonality, VerifiedGp, Violation, ViolationReport};
pub use sub::{classify_sub, generated_subgeometry, SubGpRecord, SubKind};
