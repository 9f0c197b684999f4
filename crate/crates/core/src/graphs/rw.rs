//! Scalars `b_Gamma` attached to catalog graphs through the Rozansky-Witten
//! weight system, and the Riemann-Roch polynomial they determine for `n <= 4`.

use num_traits::{One, Zero};

use super::vector::{Generator, GraphVector};
use crate::error::{Error, Result};
use crate::exact::{factorial_q, int, ChernMonomial, Poly, Rational};
use crate::rr::{FujikiTable, RRPoly};

/// `b_Theta = 2(2n-1) C(c2) / C(1)` and
/// `b_Theta2 = -4(2n-1)(2n-3) (C(c2^2) - 2 C(c4)) / (5 C(1))`.
pub fn b_gamma(gamma: Generator, n: u32, table: &FujikiTable) -> Result<Rational> {
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let n = n as i64;
    let c1 = table.c1()?;
    if c1.is_zero() {
        return Err(Error::pre("C(1) vanishes"));
    }
    match gamma {
        Generator::Theta => Ok(int(2 * (2 * n - 1)) * table.get(&ChernMonomial::c(1))? / c1),
        Generator::Theta2 => {
            let c22 = table.get(&ChernMonomial::c(1).pow(2))?;
            let c4 = table.get(&ChernMonomial::c(2))?;
            Ok(int(-4 * (2 * n - 1) * (2 * n - 3)) * (c22 - int(2) * c4) / (int(5) * c1))
        }
        other => Err(Error::UnknownGamma(other.name().into())),
    }
}

/// `b` of a product of generators, by multiplicativity.
pub fn b_monomial(gens: &[Generator], n: u32, table: &FujikiTable) -> Result<Rational> {
    gens.iter()
        .try_fold(Rational::one(), |acc, g| Ok(acc * b_gamma(*g, n, table)?))
}

/// Substitutes `b_Gamma` into every term of `v`.
pub fn b_evaluate(v: &GraphVector, n: u32, table: &FujikiTable) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (m, c) in v.terms() {
        acc += c * b_monomial(m, n, table)?;
    }
    Ok(acc)
}

/// `q^2 + (2 b / 12) q + (b^2 + t b2) / 144`.
fn quadratic(b: &Rational, b2: &Rational, t: &Rational) -> Poly {
    Poly::new(vec![
        (b * b + t * b2) / int(144),
        int(2) * b / int(12),
        Rational::one(),
    ])
}

/// The Riemann-Roch polynomial in terms of `b_Theta` and `b_Theta2`:
/// for `n = 2` one quadratic, for `n = 3` a linear factor `q + b/12` times a
/// quadratic, and for `n = 4` the product of two quadratics that follows
/// when the roots form an arithmetic progression.
pub fn rr_from_b(n: u32, c1: &Rational, b_theta: &Rational, b_theta2: &Rational) -> Result<RRPoly> {
    let p = match n {
        2 => quadratic(b_theta, b_theta2, &int(1)),
        3 => &Poly::linear(b_theta / int(12)) * &quadratic(b_theta, b_theta2, &int(3)),
        4 => {
            &quadratic(b_theta, b_theta2, &Rational::new(3.into(), 5.into()))
                * &quadratic(b_theta, b_theta2, &Rational::new(27.into(), 5.into()))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "rr_from_b needs n in 2..=4, got {n}"
            )))
        }
    };
    RRPoly::from_poly(&p.scale(&(c1 / factorial_q(2 * n))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rr::{degree4_from_rr, rr_k3n, rr_kumn};

    fn table(p: &RRPoly) -> FujikiTable {
        degree4_from_rr(p).unwrap()
    }

    #[test]
    fn k3_2_values() {
        let t = table(&rr_k3n(2));
        assert_eq!(b_gamma(Generator::Theta, 2, &t).unwrap(), int(60));
        assert_eq!(b_gamma(Generator::Theta2, 2, &t).unwrap(), int(-144));
        assert_eq!(
            b_monomial(&[Generator::Theta, Generator::Theta], 2, &t).unwrap(),
            int(3600)
        );
        assert!(matches!(
            b_gamma(Generator::Xi, 2, &t),
            Err(Error::UnknownGamma(_))
        ));
    }

    #[test]
    fn rr_from_b_recovers_known_types() {
        assert_eq!(
            rr_from_b(2, &int(3), &int(60), &int(-144)).unwrap(),
            rr_k3n(2)
        );
        for (p, n) in [
            (rr_k3n(3), 3),
            (rr_kumn(3), 3),
            (rr_k3n(4), 4),
            (rr_kumn(4), 4),
            (rr_kumn(2), 2),
        ] {
            let t = table(&p);
            let b = b_gamma(Generator::Theta, n, &t).unwrap();
            let b2 = b_gamma(Generator::Theta2, n, &t).unwrap();
            assert_eq!(
                rr_from_b(n, &t.c1().unwrap(), &b, &b2).unwrap(),
                p,
                "n = {n}"
            );
        }
    }

    #[test]
    fn k3_4_and_kum_3_b_values() {
        let t = table(&rr_k3n(4));
        assert_eq!(b_gamma(Generator::Theta, 4, &t).unwrap(), int(84));
        assert_eq!(b_gamma(Generator::Theta2, 4, &t).unwrap(), int(-240));
        let t = table(&rr_kumn(3));
        assert_eq!(b_gamma(Generator::Theta, 3, &t).unwrap(), int(48));
        assert_eq!(b_gamma(Generator::Theta2, 3, &t).unwrap(), int(-192));
    }

    #[test]
    fn double_root_when_b_theta2_vanishes() {
        let p = rr_from_b(2, &int(24), &int(36), &int(0)).unwrap();
        assert_eq!(p.to_poly(), Poly::linear(int(3)).pow(2));
    }

    #[test]
    fn unsupported_n() {
        assert!(matches!(
            rr_from_b(5, &int(1), &int(1), &int(1)),
            Err(Error::Unsupported(_))
        ));
    }
}
