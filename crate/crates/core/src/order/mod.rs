//! Bounded universes of FPF involutions, the quasiparabolic axioms and the
//! Bruhat orders.

mod bruhat;
mod universe;

pub use bruhat::bruhat_leq;
pub use universe::{
    atom_cover_check, covers_down, covers_down_within, reflection_conjugate, verify_qp1,
    verify_qp2, AtomCoverReport, Cover, QpAxiom, QpReport, QpWitness, Universe,
};
