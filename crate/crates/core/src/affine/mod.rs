//! The affine symmetric group.

mod code;
mod perm;

pub use perm::{parse_window_values, residue, AffinePerm};
