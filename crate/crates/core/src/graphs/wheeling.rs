//! Pairings of the wheeling element against powers of `1 + l`, and the two
//! degree-four gluing identities for products of wheels.

use serde::Serialize;

use super::vector::{Generator, GraphVector};
use super::{Diagram, GraphCalculus};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial_q, frac, int, pow, Rational};
use crate::genus::bernoulli;

use num_traits::One;

/// Largest `n` for which the pairings are supported.
pub const MAX_WHEELING_N: u32 = 4;

/// Modified Bernoulli number `b_{2k} = B_{2k} / (4k (2k)!)`, the coefficient
/// of `x^{2k}` in `(1/2) log(sinh(x/2) / (x/2))`.
pub fn modified_bernoulli(k: u32) -> Rational {
    let b = bernoulli(2 * k);
    b[2 * k as usize].clone() / (int(4 * k as i64) * factorial_q(2 * k))
}

/// Partitions of `j` into positive parts, largest first.
fn partitions(j: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(j, j, &mut Vec::new(), &mut out);
    out
}

impl GraphCalculus {
    /// `<exp(s sum_k b_{2k} w_{2k}), l^j>`.
    pub fn wheel_exp_against_struts(&mut self, j: u32, s: &Rational) -> Result<GraphVector> {
        if j == 0 {
            return Ok(GraphVector::one());
        }
        let mut acc = GraphVector::zero();
        for parts in partitions(j) {
            let mut coeff = Rational::one();
            let mut d = Diagram::empty();
            let mut i = 0;
            while i < parts.len() {
                let k = parts[i];
                let mult = parts[i..].iter().take_while(|&&p| p == k).count() as u32;
                coeff *= pow(&(s * modified_bernoulli(k)), mult) / factorial_q(mult);
                for _ in 0..mult {
                    d = d.disjoint_union(&Diagram::wheel(2 * k));
                }
                i += mult as usize;
            }
            acc = &acc + &self.glue_struts(&d)?.scale(&coeff);
        }
        Ok(acc)
    }

    /// `<exp(s sum_k b_{2k} w_{2k}), (1 + l)^n>`.
    pub fn wheel_exp_pairing(&mut self, n: u32, s: &Rational) -> Result<GraphVector> {
        if n > MAX_WHEELING_N {
            return Err(Error::Unsupported(format!(
                "wheeling pairings need n <= {MAX_WHEELING_N}, got {n}"
            )));
        }
        let mut acc = GraphVector::zero();
        for j in 0..=n {
            let t = self.wheel_exp_against_struts(j, s)?;
            acc = &acc + &t.scale(&Rational::from_integer(binomial(n, j)));
        }
        Ok(acc)
    }

    /// `<Omega^2, (1 + l)^n>` for `1 <= n <= 4`.
    pub fn wheeling_expansion(&mut self, n: u32) -> Result<GraphVector> {
        if n == 0 {
            return Err(Error::pre("need n >= 1"));
        }
        self.wheel_exp_pairing(n, &int(2))
    }

    /// `<Omega, (1 + l)^n> - <Omega, 1 + l>^n` (`s = 1`), or the same with
    /// `Omega^2` for `s = 2`.
    pub fn ring_homomorphism_residual(&mut self, n: u32, s: &Rational) -> Result<GraphVector> {
        let whole = self.wheel_exp_pairing(n, s)?;
        let single = self.wheel_exp_pairing(1, s)?;
        Ok(&whole + &single.pow(n).truncate(n).scale(&int(-1)))
    }

    pub fn sawon_identities(&mut self) -> Result<[IdentityCheck; 2]> {
        let w4 = Diagram::wheel(4);
        let w8 = Diagram::wheel(8);
        let scale = frac(1, 384);
        let lhs1 = self.glue_struts(&w4.power(2))?.scale(&scale);
        let lhs2 = self.glue_struts(&w8)?.scale(&scale);
        Ok([
            IdentityCheck::new("<w4^2, l^4>/384", lhs1, sawon_rhs_w4_squared()),
            IdentityCheck::new("<w8, l^4>/384", lhs2, sawon_rhs_w8()),
        ])
    }
}

/// A computed graph vector next to its expected value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub residual: String,
    pub holds: bool,
    #[serde(skip)]
    pub computed_vector: GraphVector,
}

impl IdentityCheck {
    pub fn new(name: &str, computed: GraphVector, expected: GraphVector) -> IdentityCheck {
        let residual = &computed + &expected.scale(&int(-1));
        IdentityCheck {
            name: name.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            holds: residual.is_zero(),
            residual: residual.to_string(),
            computed_vector: computed,
        }
    }
}

fn g(x: Generator) -> GraphVector {
    GraphVector::generator(x)
}

fn term(c: Rational, gens: &[Generator]) -> GraphVector {
    GraphVector::term(gens.to_vec(), c)
}

/// `24 Xi + 48 Theta4 + (25/4) Theta2^2`.
pub fn sawon_rhs_w4_squared() -> GraphVector {
    use Generator::*;
    &(&g(Xi).scale(&int(24)) + &g(Theta4).scale(&int(48))) + &term(frac(25, 4), &[Theta2, Theta2])
}

/// `7 Xi + (287/8) Theta4`.
pub fn sawon_rhs_w8() -> GraphVector {
    use Generator::*;
    &g(Xi).scale(&int(7)) + &g(Theta4).scale(&frac(287, 8))
}

/// `12^j <Omega^2, l^j>` as a polynomial in the catalog graphs, `j <= 4`.
pub fn strut_pairing_display(j: u32) -> Result<GraphVector> {
    use Generator::*;
    let v = match j {
        0 => GraphVector::one(),
        1 => g(Theta),
        2 => &term(int(1), &[Theta, Theta]) + &g(Theta2),
        3 => &term(int(1), &[Theta, Theta, Theta]) + &term(int(3), &[Theta, Theta2]),
        4 => {
            let parts = [
                term(int(1), &[Theta, Theta, Theta, Theta]),
                term(int(6), &[Theta, Theta, Theta2]),
                term(int(3), &[Theta2, Theta2]),
                term(frac(144, 25), &[Xi]),
                term(frac(-162, 25), &[Theta4]),
            ];
            parts.iter().fold(GraphVector::zero(), |a, b| &a + b)
        }
        _ => return Err(Error::Unsupported(format!("no display for j = {j}"))),
    };
    Ok(v)
}

/// `sum_j binom(n, j) / 12^j * strut_pairing_display(j)`.
pub fn expected_wheeling(n: u32) -> Result<GraphVector> {
    let mut acc = GraphVector::zero();
    for j in 0..=n {
        let c = Rational::from_integer(binomial(n, j)) / pow(&int(12), j);
        acc = &acc + &strut_pairing_display(j)?.scale(&c);
    }
    Ok(acc)
}
