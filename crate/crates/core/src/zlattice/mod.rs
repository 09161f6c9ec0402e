//! Integer lattices in Hermite normal form and the span conjecture checks.

mod lattice;
mod reports;

pub use lattice::IntLattice;
pub use reports::{
    both_classes, conjecture_reports, fpf_span, positive_basis_search, ConjectureOptions,
    ConjectureReport, DegreeReport, PositiveBasis, Truncation, Verdict,
};
