//! Chern character, Todd class and the square root of the Todd class as
//! polynomials in the even Chern classes, with all odd Chern classes zero.
//!
//! Power sums come from Newton's identities; the multiplicative classes are
//! `exp(sum_k t_k p_{2k})` where `t_k` is read off from the logarithm of the
//! defining power series.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::monomial::MAX_HALF_INDEX;
use crate::exact::{binomial, factorial_q, frac, int, ChernMonomial, Rational};
use crate::rr::FujikiTable;

/// Highest supported weight.
pub const MAX_WEIGHT: u32 = 2 * MAX_HALF_INDEX as u32;

/// A weight-homogeneous polynomial in Chern monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPolynomial {
    weight: u32,
    terms: BTreeMap<ChernMonomial, Rational>,
}

impl ChernPolynomial {
    pub fn zero(weight: u32) -> Self {
        ChernPolynomial {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        let mut p = Self::zero(0);
        p.terms.insert(ChernMonomial::ONE, Rational::one());
        p
    }

    /// Build from terms; panics if the terms are not all of one weight.
    pub fn from_terms(
        weight: u32,
        terms: impl IntoIterator<Item = (ChernMonomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(weight);
        for (m, c) in terms {
            assert_eq!(m.weight(), weight, "inhomogeneous term {m}");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: ChernMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coeff(&self, m: &ChernMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChernMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product, or `None` if the weight would exceed [`MAX_WEIGHT`].
    pub fn mul(&self, other: &ChernPolynomial) -> Option<ChernPolynomial> {
        let w = self.weight + other.weight;
        if w > MAX_WEIGHT {
            return None;
        }
        let mut out = Self::zero(w);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        Some(out)
    }

    pub fn add(&self, other: &ChernPolynomial) -> ChernPolynomial {
        assert_eq!(
            self.weight, other.weight,
            "adding polynomials of different weight"
        );
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ChernPolynomial {
        let mut out = Self::zero(self.weight);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }
}

impl fmt::Display for ChernPolynomial {
    /// One `coeff * monomial` per line, monomials in descending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in self.terms.iter().rev() {
            writeln!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}

/// Truncated polynomial in Chern classes, indexed by weight.
type Graded = Vec<ChernPolynomial>;

fn graded_zero() -> Graded {
    (0..=MAX_WEIGHT).map(ChernPolynomial::zero).collect()
}

fn graded_mul(a: &Graded, b: &Graded) -> Graded {
    let mut out = graded_zero();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > MAX_WEIGHT as usize || y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y).expect("weight checked"));
        }
    }
    out
}

/// `exp(x)` for `x` without constant term.
fn graded_exp(x: &Graded) -> Graded {
    assert!(x[0].is_zero());
    let mut out = graded_zero();
    out[0] = ChernPolynomial::one();
    let mut power = out.clone();
    for j in 1..=MAX_WEIGHT as usize / 2 {
        power = graded_mul(&power, x);
        let inv = Rational::one() / factorial_q(j as u32);
        for w in 0..=MAX_WEIGHT as usize {
            out[w] = out[w].add(&power[w].scale(&inv));
        }
    }
    out
}

/// Elementary symmetric function `e_i` in Chern-root degree `i` (weight `i`,
/// odd ones vanish).
fn elementary(i: u32) -> ChernPolynomial {
    if i == 0 {
        return ChernPolynomial::one();
    }
    if i % 2 == 1 {
        return ChernPolynomial::zero(i);
    }
    ChernPolynomial::from_terms(i, [(ChernMonomial::c(i as usize / 2), Rational::one())])
}

/// Power sums `p_1 .. p_MAX_WEIGHT` from Newton's identities.
fn power_sums() -> &'static Vec<ChernPolynomial> {
    static P: OnceLock<Vec<ChernPolynomial>> = OnceLock::new();
    P.get_or_init(|| {
        let mut p: Vec<ChernPolynomial> = vec![ChernPolynomial::zero(0)];
        for m in 1..=MAX_WEIGHT {
            // p_m = sum_{i=1}^{m-1} (-1)^{i-1} e_i p_{m-i} + (-1)^{m-1} m e_m
            let mut acc =
                elementary(m).scale(&int(if m % 2 == 1 { m as i64 } else { -(m as i64) }));
            for i in 1..m {
                let sign = if i % 2 == 1 { int(1) } else { int(-1) };
                let t = elementary(i).mul(&p[(m - i) as usize]).expect("weight");
                acc = acc.add(&t.scale(&sign));
            }
            p.push(acc);
        }
        p
    })
}

/// Bernoulli numbers `B_0 .. B_m` with `B_1 = -1/2`.
pub fn bernoulli(m: u32) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for k in 1..=m {
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binomial(k + 1, j as u32)) * bj;
        }
        b.push(-s / int(k as i64 + 1));
    }
    b
}

/// `sum_k scale * t_k p_{2k}` with `t_k = -B_{2k} / (2k (2k)!)`, the even part
/// of `log(x / (1 - e^{-x}))`.
fn log_todd(scale: &Rational) -> Graded {
    let b = bernoulli(MAX_WEIGHT);
    let mut out = graded_zero();
    for k in 1..=MAX_WEIGHT / 2 {
        let t = -b[2 * k as usize].clone() / (int(2 * k as i64) * factorial_q(2 * k));
        out[2 * k as usize] = power_sums()[2 * k as usize].scale(&(t * scale));
    }
    out
}

fn todd_series() -> &'static Graded {
    static T: OnceLock<Graded> = OnceLock::new();
    T.get_or_init(|| graded_exp(&log_todd(&Rational::one())))
}

fn sqrt_todd_series() -> &'static Graded {
    static T: OnceLock<Graded> = OnceLock::new();
    T.get_or_init(|| graded_exp(&log_todd(&frac(1, 2))))
}

fn check_k(k: u32, allow_zero: bool) -> Result<()> {
    if k > MAX_HALF_INDEX as u32 {
        return Err(Error::Unsupported(format!(
            "weight {} exceeds the supported maximum {MAX_WEIGHT}",
            2 * k
        )));
    }
    if k == 0 && !allow_zero {
        return Err(Error::pre("k must be at least 1"));
    }
    Ok(())
}

/// `ch_{2k} = p_{2k} / (2k)!`.
pub fn chern_character(k: u32) -> Result<ChernPolynomial> {
    check_k(k, false)?;
    Ok(power_sums()[2 * k as usize].scale(&(Rational::one() / factorial_q(2 * k))))
}

/// Weight-`2k` component of the Todd class.
pub fn todd_component(k: u32) -> Result<ChernPolynomial> {
    check_k(k, true)?;
    Ok(todd_series()[2 * k as usize].clone())
}

/// Weight-`2k` component of the square root of the Todd class.
pub fn sqrt_todd_component(k: u32) -> Result<ChernPolynomial> {
    check_k(k, true)?;
    Ok(sqrt_todd_series()[2 * k as usize].clone())
}

/// `C(cp) = sum coeff * C(c_lambda)`.
pub fn evaluate(cp: &ChernPolynomial, table: &FujikiTable) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (m, c) in cp.terms() {
        acc += c * table.get(m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ChernMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn low_degree_values() {
        let ch1 = chern_character(1).unwrap();
        assert_eq!(ch1.coeff(&m("c2")), int(-1));
        let ch2 = chern_character(2).unwrap();
        assert_eq!(ch2.coeff(&m("c2^2")), frac(1, 12));
        assert_eq!(ch2.coeff(&m("c4")), frac(-1, 6));
        let td2 = todd_component(1).unwrap();
        assert_eq!(td2.coeff(&m("c2")), frac(1, 12));
        let td4 = todd_component(2).unwrap();
        assert_eq!(td4.coeff(&m("c2^2")), frac(3, 720));
        assert_eq!(td4.coeff(&m("c4")), frac(-1, 720));
        let s2 = sqrt_todd_component(1).unwrap();
        assert_eq!(s2.coeff(&m("c2")), frac(1, 24));
        let s4 = sqrt_todd_component(2).unwrap();
        assert_eq!(s4.coeff(&m("c2^2")), frac(7, 5760));
        assert_eq!(s4.coeff(&m("c4")), frac(-1, 1440));
        assert_eq!(sqrt_todd_component(0).unwrap(), ChernPolynomial::one());
    }

    #[test]
    fn range_errors() {
        assert!(matches!(chern_character(6), Err(Error::Unsupported(_))));
        assert!(matches!(todd_component(6), Err(Error::Unsupported(_))));
        assert!(chern_character(0).is_err());
    }

    #[test]
    fn odd_power_sums_vanish() {
        for k in (1..=MAX_WEIGHT as usize).step_by(2) {
            assert!(power_sums()[k].is_zero());
        }
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(10);
        assert_eq!(b[2], frac(1, 6));
        assert_eq!(b[4], frac(-1, 30));
        assert_eq!(b[10], frac(5, 66));
    }
}
