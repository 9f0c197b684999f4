//! Exact arithmetic for generalized Fujiki constants of hyperkaehler
//! manifolds and symplectic orbifolds: Riemann-Roch polynomials, Betti
//! bounds, orbifold corrections, characteristic-class tables and the
//! Jacobi-diagram identities behind the square-root Todd factorization.

pub mod catalog;
pub mod error;
pub mod exact;
pub mod genus;
pub mod graphs;
pub mod orbifold;
pub mod reproduce;
pub mod rr;

pub use error::{Error, Result};
pub use exact::{frac, int, ChernMonomial, Poly, Rational};
