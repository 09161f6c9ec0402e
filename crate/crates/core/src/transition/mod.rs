//! Transition formulas for affine Stanley symmetric functions and their FPF
//! analogues.

mod checks;
mod sets;

pub use checks::{
    atom_bijection_check, check_transition_affine, check_transition_fpf, phi_subset_check, theta,
    theta_check, triple_sum, yty_dichotomy, AtomBijectionReport, DichotomyReport, SubsetReport,
    ThetaReport, TransitionReport, Triple,
};
pub use sets::{
    is_right_cover, normalize_reflection, phi_set, phi_sets, pi_set, pi_sets, CoverSet, Side,
};
