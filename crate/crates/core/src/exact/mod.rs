//! Exact scalar and polynomial arithmetic.

pub mod cyclo;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod rational;

pub use cyclo::{
    cyclo_det_factor, cyclotomic_poly, galois_inverse_sum, galois_inverse_sum_by_inverses,
    CycloElem,
};
pub use linalg::solve;
pub use monomial::ChernMonomial;
pub use poly::{Poly, QuadraticRoots};
pub use rational::{
    approx, binomial, factorial, factorial_q, fmt_rational, frac, int, parse_rational, pow,
    sqrt_exact, Rational, Surd,
};
