//! Endomorphisms of pointed polygons fixing the point linewise, the
//! η-chain of images, and indiscernible line sequences.

mod endo;
mod indiscernible;

pub use endo::{
    enumerate_endos, eta_chain, intertwines, is_e_object, EFlags, EObjectCandidate, EndoEnumeration, EndoMode,
    EtaChain, Fixing, PointedGp, DEFAULT_SEARCH_BUDGET, MAX_SEARCH_POINTS,
};
pub use indiscernible::{
    generated_disjointness_probe, indiscernible_check, mutually_skew, tuple_automorphism, DisjointnessReport,
    IndiscernibleVerdict, LineSequence, OutsideLine, TupleWitness,
};

#[cfg(test)]
mod tests;
