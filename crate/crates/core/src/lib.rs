//! Affine fixed-point-free involution Stanley symmetric functions and their
//! supporting structures.

pub mod affine;
pub mod error;
pub mod fpf;
pub mod hecke;
pub mod order;
pub mod symfunc;
pub mod transition;
pub mod zlattice;

pub use affine::AffinePerm;
pub use error::{Error, Result};
pub use fpf::{FpfInvolution, Sign};
pub use symfunc::{MonomialExpansion, Partition};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/affine.md")]
    mod affine {}
    #[doc = include_str!("../../../book/src/symfunc.md")]
    mod symfunc {}
    #[doc = include_str!("../../../book/src/fpf.md")]
    mod fpf {}
    #[doc = include_str!("../../../book/src/order.md")]
    mod order {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/transition.md")]
    mod transition {}
    #[doc = include_str!("../../../book/src/zlattice.md")]
    mod zlattice {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
