//! Sparse multivariate polynomials over prime fields.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{FpScalar, PrimeField};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse;
pub(crate) use poly::same_ring;
pub use poly::{PolyRing, Polynomial, Ring};
