//! Kantor families in elementary abelian groups, their coset geometries,
//! translation quadrangles and the classical constructions.

mod classical;
mod coset;
mod family;
mod tgq;

pub use classical::{classical_t2_conic, symplectic_w};
pub use coset::{coset_geometry, line_symbol, CosetGeometry, INFINITY};
pub use family::{
    verify_kantor, AxiomCheck, KantorAxiom, KantorFamily, KantorFile, KantorReport, KantorWitness, Member,
};
pub use tgq::{kantor_from_tgq, tgq_of, TgqInstance};
