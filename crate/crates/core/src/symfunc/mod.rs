//! Partitions, monomial expansions and affine Stanley symmetric functions.

mod expansion;
mod partition;

pub use expansion::{
    affine_schur, cyclically_decreasing, from_schur_basis, omega_plus, stanley_expand,
    to_schur_basis, MonomialExpansion, StanleyExpander,
};
pub use partition::{par_n, partitions_bounded, Partition};
