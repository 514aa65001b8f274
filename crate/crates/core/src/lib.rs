//! Characteristic-p commutative algebra on top of a Buchberger engine over
//! prime fields: Frobenius powers, colon ideals, socles, Fedder's F-purity
//! test and the pseudocanonical cover `S(f) = R + It`.

pub mod error;
pub mod fsing;
pub mod groebner;
pub mod ideals;
pub mod linalg;
pub mod polyring;
pub mod quotients;

pub use error::{Error, Result};
pub use groebner::{buchberger, buchberger_with, BuchbergerOptions, GroebnerBasis};
pub use ideals::Ideal;
pub use polyring::{parse, FpScalar, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Ring};
pub use quotients::QuotientPresentation;
