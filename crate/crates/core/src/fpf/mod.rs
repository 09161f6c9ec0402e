//! Fixed-point-free affine involutions and their atoms.

mod atoms;
mod involution;

pub use atoms::{
    atom_poset, atoms, fpf_stanley, involutions_up_to, prec_successors, Alignment, AtomPoset,
    FpfCache,
};
pub use involution::{beta, parse_cycles, FpfInvolution, Sign};
