//! Elements of the cyclotomic field `Q[x]/Phi_m(x)` in the power basis.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// The m-th cyclotomic polynomial, computed as `(x^m - 1) / prod_{d | m, d < m} Phi_d`.
pub fn cyclotomic_poly(m: u32) -> Poly {
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut p = &Poly::monomial(int(1), m as usize) - &Poly::constant(int(1));
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.div_rem(&cyclotomic_poly(d)).expect("nonzero").0;
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// Residue modulo `Phi_m`; `coords` has length `phi(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElem {
    order: u32,
    coords: Vec<Rational>,
}

impl CycloElem {
    pub fn from_poly(order: u32, p: &Poly) -> Self {
        let phi = cyclotomic_poly(order);
        let r = p.div_rem(&phi).expect("nonzero").1;
        let dim = phi.degree().unwrap_or(0);
        let coords = (0..dim).map(|i| r.coeff(i)).collect();
        CycloElem { order, coords }
    }

    pub fn constant(order: u32, c: Rational) -> Self {
        Self::from_poly(order, &Poly::constant(c))
    }

    /// `zeta_m^k`
    pub fn zeta_pow(order: u32, k: u64) -> Self {
        let e = (k % order as u64) as usize;
        Self::from_poly(order, &Poly::monomial(int(1), e))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn as_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.order, other.order);
        Self::from_poly(self.order, &(&self.as_poly() + &other.as_poly()))
    }

    pub fn mul(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.order, other.order);
        Self::from_poly(self.order, &(&self.as_poly() * &other.as_poly()))
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_m`.
    pub fn inverse(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.as_poly().ext_gcd(&cyclotomic_poly(self.order));
        debug_assert!(g == Poly::constant(Rational::one()));
        Some(Self::from_poly(self.order, &s))
    }

    /// The value when the element is rational.
    pub fn rational_part(&self) -> Result<Rational> {
        if self.coords.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(self.coords.first().cloned().unwrap_or_else(Rational::zero))
    }
}

/// `prod_i (1 - zeta_m^(j * w_i))`, i.e. `det(Id - g)` for the diagonal action
/// of `g = zeta^j` with the given weights.
pub fn cyclo_det_factor(m: u32, weights: &[u32], j: u32) -> Result<CycloElem> {
    if m < 2 || j == 0 || j >= m {
        return Err(Error::pre(format!(
            "need 1 <= j <= m-1, got m = {m}, j = {j}"
        )));
    }
    let mut acc = CycloElem::constant(m, Rational::one());
    let one = CycloElem::constant(m, Rational::one());
    for &w in weights {
        if w >= m {
            return Err(Error::pre(format!("weight {w} not in [0, {}]", m - 1)));
        }
        if (j as u64 * w as u64).is_multiple_of(m as u64) {
            return Err(Error::VanishingDeterminant {
                order: m,
                weight: w,
                j,
            });
        }
        let z = CycloElem::zeta_pow(m, j as u64 * w as u64);
        let factor = one.add(&CycloElem::constant(m, -Rational::one()).mul(&z));
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// `sum_{j=1}^{m-1} 1 / det(Id - zeta^j)`, returned as an exact rational.
///
/// Works in `Q[y]/(y^m - 1)` using `1/(1 - x) = -(1/m) sum_i i x^i` for
/// `x^m = 1, x != 1`, and reduces modulo `Phi_m` once at the end.
pub fn galois_inverse_sum(m: u32, weights: &[u32]) -> Result<Rational> {
    if m < 2 {
        return Err(Error::pre(format!("need m >= 2, got {m}")));
    }
    if weights.len() > 8 {
        return galois_inverse_sum_by_inverses(m, weights);
    }
    let mu = m as usize;
    // integer numerators over the common denominator (-m)^len
    let mut total = vec![0i128; mu];
    for j in 1..m {
        let mut acc = vec![0i128; mu];
        acc[0] = 1;
        for &w in weights {
            if w >= m {
                return Err(Error::pre(format!("weight {w} not in [0, {}]", m - 1)));
            }
            let k = (j as u64 * w as u64 % m as u64) as usize;
            if k == 0 {
                return Err(Error::VanishingDeterminant {
                    order: m,
                    weight: w,
                    j,
                });
            }
            let mut next = vec![0i128; mu];
            for (e, &c) in acc.iter().enumerate().filter(|(_, c)| **c != 0) {
                for i in 1..mu {
                    next[(e + i * k) % mu] += c * i as i128;
                }
            }
            acc = next;
        }
        for (t, c) in total.iter_mut().zip(acc) {
            *t += c;
        }
    }
    let denom = Rational::from_integer((-(m as i64)).into()).pow(weights.len() as i32);
    let coeffs = total
        .into_iter()
        .map(|c| Rational::from_integer(c.into()) / &denom)
        .collect();
    CycloElem::from_poly(m, &Poly::new(coeffs)).rational_part()
}

/// The same sum through field inverses of `cyclo_det_factor`.
pub fn galois_inverse_sum_by_inverses(m: u32, weights: &[u32]) -> Result<Rational> {
    let mut acc = CycloElem::constant(m, Rational::zero());
    for j in 1..m {
        let d = cyclo_det_factor(m, weights, j)?;
        acc = acc.add(&d.inverse().expect("nonzero determinant"));
    }
    acc.rational_part()
}
