//! Computational algebra for degenerations of the G2 Grassmannian.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`] and [`poly`]: exact sparse polynomial arithmetic over `QQ` and `F_p`.
//! - [`groebner`]: Buchberger's algorithm, elimination and kernels of ring maps.
//! - [`hilbert`]: Hilbert series, Hilbert polynomials, dimension and degree.
//! - [`exterior`]: exterior algebra of a 7-dimensional space and 4-form tools.
//! - [`varieties`]: the G2 presentations, the curve family and the verification checks.
//! - [`toric`]: lattice polytopes, reflexive duals and Ehrhart data.

pub mod error;
pub mod exterior;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod poly;
pub mod toric;
pub mod varieties;

pub use error::PolyError;
pub use field::{CoefficientField, Field, PrimeField, Rationals, DEFAULT_PRIME, DEFAULT_SECOND_PRIME};
pub use poly::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial};
