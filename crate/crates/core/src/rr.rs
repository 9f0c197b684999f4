//! Riemann-Roch polynomials, generalized Fujiki constants and the bounds on
//! the second Betti number they imply.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    binomial, factorial_q, int, pow, rational::serde_str, ChernMonomial, Poly, Rational,
};
use crate::genus;

/// `RR_X(q) = sum_i A_i q^{n-i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RRPoly {
    pub n: u32,
    /// `A_0 .. A_n`; `A_i` multiplies `q^{n-i}`.
    #[serde(with = "serde_str::vec")]
    pub coeffs: Vec<Rational>,
}

impl RRPoly {
    pub fn new(n: u32, coeffs: Vec<Rational>) -> Result<RRPoly> {
        if coeffs.len() != n as usize + 1 {
            return Err(Error::pre(format!(
                "expected {} coefficients for n = {n}, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        if !coeffs[0].is_positive() {
            return Err(Error::pre("leading coefficient A0 must be positive"));
        }
        Ok(RRPoly { n, coeffs })
    }

    /// From a polynomial in `q` of degree `n`.
    pub fn from_poly(p: &Poly) -> Result<RRPoly> {
        let n = p.degree().ok_or_else(|| Error::pre("zero polynomial"))?;
        RRPoly::new(n as u32, (0..=n).map(|i| p.coeff(n - i)).collect())
    }

    pub fn a(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.n as usize;
        Poly::new((0..=n).map(|k| self.coeffs[n - k].clone()).collect())
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.to_poly().eval(q)
    }
}

/// `binom(q/2 + n + 1, n)`.
pub fn rr_k3n(n: u32) -> RRPoly {
    binom_half_q(n + 1, n, &Rational::one())
}

/// `(n + 1) binom(q/2 + n, n)`.
pub fn rr_kumn(n: u32) -> RRPoly {
    binom_half_q(n, n, &int(n as i64 + 1))
}

/// `scale * binom(q/2 + shift, n)` as a polynomial in `q`, i.e.
/// `scale / (2^n n!) * prod_i (q + 2 shift - 2i)` with integer products first.
fn binom_half_q(shift: u32, n: u32, scale: &Rational) -> RRPoly {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for i in 0..n {
        let root = BigInt::from(2 * (shift as i64 - i as i64));
        let mut next = vec![BigInt::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k] += a * &root;
            next[k + 1] += a;
        }
        c = next;
    }
    let denom = factorial_q(n) * pow(&int(2), n);
    let f = scale / denom;
    let coeffs = (0..=n as usize)
        .map(|i| &f * Rational::from_integer(c[n as usize - i].clone()))
        .collect();
    RRPoly { n, coeffs }
}

/// `(1/m) p(m q)`.
pub fn rr_scale(p: &RRPoly, m: u32) -> RRPoly {
    let m = int(m as i64);
    let coeffs = (0..=p.n as usize)
        .map(|i| &p.coeffs[i] * pow(&m, p.n - i as u32) / &m)
        .collect();
    RRPoly { n: p.n, coeffs }
}

/// Generalized Fujiki constants `C(c_lambda)` of one manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FujikiTable {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<u32>,
    #[serde(with = "serde_str::map")]
    pub entries: BTreeMap<ChernMonomial, Rational>,
}

impl FujikiTable {
    pub fn new(n: u32, b2: Option<u32>) -> Self {
        FujikiTable {
            n,
            b2,
            entries: BTreeMap::new(),
        }
    }

    /// Build from `(monomial, value)` pairs written as strings.
    pub fn from_pairs(n: u32, b2: Option<u32>, pairs: &[(&str, Rational)]) -> Self {
        let mut t = FujikiTable::new(n, b2);
        for (m, v) in pairs {
            t.insert(m.parse().expect("valid monomial"), v.clone());
        }
        t
    }

    pub fn insert(&mut self, m: ChernMonomial, v: Rational) {
        self.entries.insert(m, v);
    }

    pub fn get(&self, m: &ChernMonomial) -> Result<Rational> {
        self.entries
            .get(m)
            .cloned()
            .ok_or_else(|| Error::MissingMonomial(m.to_string()))
    }

    pub fn get_str(&self, m: &str) -> Result<Rational> {
        let mono: ChernMonomial = m.parse()?;
        self.get(&mono)
    }

    /// The Fujiki constant `C(1)`.
    pub fn c1(&self) -> Result<Rational> {
        self.get(&ChernMonomial::ONE)
    }

    pub fn is_complete_to(&self, weight: u32) -> bool {
        ChernMonomial::up_to_weight(weight)
            .iter()
            .all(|m| self.entries.contains_key(m))
    }

    /// `sum_i C(td_{2i}) / (2n-2i)! q^{n-i}`; needs the table complete to weight `2n`.
    pub fn rr(&self) -> Result<RRPoly> {
        let n = self.n;
        let coeffs = (0..=n)
            .map(|i| {
                Ok(genus::evaluate(&genus::todd_component(i)?, self)? / factorial_q(2 * n - 2 * i))
            })
            .collect::<Result<Vec<_>>>()?;
        RRPoly::new(n, coeffs)
    }
}

/// `C(1), C(c2), C(c2^2), C(c4)` from the first three coefficients.
pub fn degree4_from_rr(p: &RRPoly) -> Result<FujikiTable> {
    let n = p.n;
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let (a0, a1, a2) = (p.a(0), p.a(1), p.a(2));
    let nn = int(n as i64);
    let sq = int(n as i64 - 1) * a1 * a1 / (&nn * a0);
    let f4 = int(144) * factorial_q(2 * n - 4);
    let mut t = FujikiTable::new(n, None);
    t.insert(ChernMonomial::ONE, factorial_q(2 * n) * a0);
    t.insert(ChernMonomial::c(1), int(12) * factorial_q(2 * n - 2) * a1);
    t.insert(ChernMonomial::c(1).pow(2), &f4 * (int(4) * a2 - &sq));
    t.insert(ChernMonomial::c(2), &f4 * (int(7) * a2 - int(3) * &sq));
    Ok(t)
}

/// `C(q alpha)` from `C(alpha)` for `alpha` of weight `2k`.
pub fn fujiki_q_mult(c_alpha: &Rational, k: u32, n: u32, b2: u32) -> Result<Rational> {
    if k >= n {
        return Err(Error::DegreeOverflow { k, n });
    }
    let num = int(b2 as i64 + 2 * n as i64 - 2 * k as i64 - 2);
    let den = int(2 * n as i64 - 2 * k as i64 - 1);
    Ok(c_alpha * num / den)
}

/// `C(q^k) = prod_{i=1}^k (b + 2n - 2i) / (1 + 2n - 2i) * C(1)`.
pub fn fujiki_q_power(k: u32, n: u32, b2: u32, c1: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::DegreeOverflow { k, n });
    }
    let mut acc = c1.clone();
    for i in 1..=k as i64 {
        acc = acc * int(b2 as i64 + 2 * n as i64 - 2 * i) / int(1 + 2 * n as i64 - 2 * i);
    }
    Ok(acc)
}

/// `int_X alpha beta^{2n-2k} = C(alpha) q(beta)^{n-k}`.
pub fn eval_fujiki_integral(
    c_alpha: &Rational,
    q_beta: &Rational,
    n: u32,
    k: u32,
) -> Result<Rational> {
    if k > n {
        return Err(Error::DegreeOverflow { k, n });
    }
    Ok(c_alpha * pow(q_beta, n - k))
}

fn degree4_values(t: &FujikiTable) -> Result<[Rational; 4]> {
    Ok([
        t.c1()?,
        t.get(&ChernMonomial::c(1))?,
        t.get(&ChernMonomial::c(1).pow(2))?,
        t.get(&ChernMonomial::c(2))?,
    ])
}

/// `7 C(c2^2) - 4 C(c4) - 5(2n-1) C(c2)^2 / ((2n-3) C(1))`.
pub fn hitchin_sawon_check(t: &FujikiTable) -> Result<Rational> {
    if t.n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let [c1, c2, c22, c4] = degree4_values(t)?;
    let n = t.n as i64;
    Ok(int(7) * c22 - int(4) * c4 - int(5 * (2 * n - 1)) * &c2 * &c2 / (int(2 * n - 3) * c1))
}

/// `RR_{X,1/2}`: `C(td^{1/2}_{2n}) (1 + q/(2 r))^n` with `r = (2n-1) C(c2) / (24 C(1))`.
pub fn rr_half(n: u32, c1: &Rational, c_c2: &Rational) -> Result<RRPoly> {
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    if !c1.is_positive() || !c_c2.is_positive() {
        return Err(Error::pre("need C(1) > 0 and C(c2) > 0"));
    }
    let r = int(2 * n as i64 - 1) * c_c2 / (int(24) * c1);
    let two_r = int(2) * &r;
    let top = c1 * pow(&two_r, n) / factorial_q(2 * n);
    let inv = Rational::one() / &two_r;
    let coeffs = (0..=n)
        .map(|i| &top * Rational::from_integer(binomial(n, n - i)) * pow(&inv, n - i))
        .collect();
    RRPoly::new(n, coeffs)
}

/// Outcome of comparing `C(c2^2)` with its value when `c2` lies in the
/// subalgebra generated by degree two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerbitskyCheck {
    #[serde(with = "serde_str")]
    pub lhs: Rational,
    #[serde(with = "serde_str")]
    pub rhs: Rational,
    pub is_in_verbitsky: bool,
}

/// `C(c2^2) >= (2n-1)(b+2n-4) C(c2)^2 / ((2n-3)(b+2n-2) C(1))`, with equality
/// exactly when `c2` is a multiple of the dual BBF class.
pub fn c2_verbitsky_check(t: &FujikiTable, b2: u32) -> Result<VerbitskyCheck> {
    if b2 < 3 {
        return Err(Error::pre("need b2 >= 3"));
    }
    if t.n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let [c1, c2, c22, _] = degree4_values(t)?;
    let n = t.n as i64;
    let b = b2 as i64;
    let rhs =
        int((2 * n - 1) * (b + 2 * n - 4)) * &c2 * &c2 / (int((2 * n - 3) * (b + 2 * n - 2)) * c1);
    if c22 < rhs {
        return Err(Error::InequalityViolated {
            lhs: c22.to_string(),
            rhs: rhs.to_string(),
        });
    }
    Ok(VerbitskyCheck {
        is_in_verbitsky: c22 == rhs,
        lhs: c22,
        rhs,
    })
}

pub const ATTAINED_IFF: &str = "c2 in Sym^2 H^2";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub condition_holds: bool,
    #[serde(with = "serde_str::opt")]
    pub bound: Option<Rational>,
    pub attained_iff: String,
    #[serde(with = "serde_str::opt")]
    pub mu: Option<Rational>,
}

impl BoundReport {
    fn new(bound: Option<Rational>, mu: Option<Rational>) -> Self {
        BoundReport {
            condition_holds: bound.is_some(),
            bound,
            attained_iff: ATTAINED_IFF.into(),
            mu,
        }
    }
}

/// Holds when `2n A0 A2 < (n-1) A1^2`; the bound is then
/// `1 / (1 - 2n A0 A2 / ((n-1) A1^2)) - (2n - 2)`.
pub fn b2_bound_from_rr(p: &RRPoly) -> Result<BoundReport> {
    let n = p.n;
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let a1 = p.a(1);
    if a1.is_zero() {
        return Ok(BoundReport::new(None, None));
    }
    let ratio = int(2 * n as i64) * p.a(0) * p.a(2) / (int(n as i64 - 1) * a1 * a1);
    if ratio >= Rational::one() {
        return Ok(BoundReport::new(None, None));
    }
    let bound = Rational::one() / (Rational::one() - ratio) - int(2 * n as i64 - 2);
    Ok(BoundReport::new(Some(bound), None))
}

/// With `mu = C(c2^2) / C(c4)`: holds when `mu > 2`, bound `9 - 2n + 10 / (mu - 2)`.
pub fn b2_bound_from_mu(n: u32, mu: &Rational) -> BoundReport {
    let two = int(2);
    if *mu <= two {
        return BoundReport::new(None, Some(mu.clone()));
    }
    let bound = int(9 - 2 * n as i64) + int(10) / (mu - two);
    BoundReport::new(Some(bound), Some(mu.clone()))
}

/// `(n-1) / (n sum l^2 / (sum l)^2 - 1) - (2n-2)` for the negated roots `l`.
pub fn dispersion_bound(lambdas: &[Rational], n: u32) -> Result<Rational> {
    if lambdas.len() != n as usize || n < 2 {
        return Err(Error::pre(format!(
            "need n >= 2 roots, got {} for n = {n}",
            lambdas.len()
        )));
    }
    if lambdas.iter().any(|l| !l.is_positive()) {
        return Err(Error::pre("negated roots must be positive"));
    }
    if lambdas.iter().all(|l| *l == lambdas[0]) {
        return Err(Error::AllRootsEqual);
    }
    let s: Rational = lambdas.iter().sum();
    let s2: Rational = lambdas.iter().map(|l| l * l).sum();
    let nn = int(n as i64);
    Ok(int(n as i64 - 1) / (nn * s2 / (&s * &s) - Rational::one()) - int(2 * n as i64 - 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub c2sq_positive: bool,
    pub c4_positive_guaranteed: bool,
}

/// `C(c2^2) > 0` read from the table; positivity of `C(c4)` is guaranteed
/// when `b2 + 2n > 9`.
pub fn positivity_report(t: &FujikiTable, b2: u32) -> Result<PositivityReport> {
    let c22 = t.get(&ChernMonomial::c(1).pow(2))?;
    Ok(PositivityReport {
        c2sq_positive: c22.is_positive(),
        c4_positive_guaranteed: b2 + 2 * t.n > 9,
    })
}

/// `c_X = C(1) 2^n n! / (2n)!`.
pub fn small_fujiki(n: u32, c1: &Rational) -> Rational {
    c1 * pow(&int(2), n) * factorial_q(n) / factorial_q(2 * n)
}

/// `C(ch4) = (C(c2^2) - 2 C(c4)) / 12`.
pub fn ch4_constant(t: &FujikiTable) -> Result<Rational> {
    let c22 = t.get(&ChernMonomial::c(1).pow(2))?;
    let c4 = t.get(&ChernMonomial::c(2))?;
    Ok((c22 - int(2) * c4) / int(12))
}
