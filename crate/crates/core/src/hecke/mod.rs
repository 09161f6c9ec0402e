//! Laurent polynomials, the Hecke modules `M` and `N`, the bar involution,
//! canonical bases and W-graphs.

mod canonical;
mod laurent;
mod module;

pub use canonical::{CanonicalBasis, Convention, ConventionReport, WGraph};
pub use laurent::LaurentPoly;
pub use module::{first_descent, BarOperator, ModuleElement, Variant};
