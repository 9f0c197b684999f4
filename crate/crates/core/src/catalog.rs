//! Generalized Fujiki constants of the known deformation types, the check
//! that their Chern classes are multiples of powers of the BBF class, the
//! sequential solve for the ten-dimensional O'Grady type, and the
//! conjecture checks and enumerations built on these tables.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::serde_str;
use crate::exact::{factorial_q, int, pow, sqrt_exact, ChernMonomial, Poly, Rational};
use crate::genus::{self, ChernPolynomial};
use crate::rr::{
    b2_bound_from_mu, degree4_from_rr, fujiki_q_power, rr_half, rr_k3n, rr_kumn, FujikiTable,
    RRPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldEntry {
    pub name: String,
    pub n: u32,
    pub b2: u32,
    pub table: FujikiTable,
    /// `mu_k` with `c_{2k} = mu_k q^k`.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_map"
    )]
    pub chern_q_coeffs: Option<BTreeMap<u32, Rational>>,
    /// Source of each value; the key `*` covers all monomials not listed.
    pub provenance: BTreeMap<String, String>,
}

fn ser_opt_map<S: serde::Serializer>(
    m: &Option<BTreeMap<u32, Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => serde_str::map::serialize(m, s),
        None => s.serialize_none(),
    }
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    n: u32,
    b2: u32,
    #[serde(with = "serde_str::map")]
    entries: BTreeMap<ChernMonomial, Rational>,
    #[serde(default, with = "serde_str::map")]
    chern_q_coeffs: BTreeMap<u32, Rational>,
    provenance: BTreeMap<String, String>,
}

impl ManifoldEntry {
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawEntry =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(ManifoldEntry {
            name: raw.name,
            n: raw.n,
            b2: raw.b2,
            table: FujikiTable {
                n: raw.n,
                b2: Some(raw.b2),
                entries: raw.entries,
            },
            chern_q_coeffs: (!raw.chern_q_coeffs.is_empty()).then_some(raw.chern_q_coeffs),
            provenance: raw.provenance,
        })
    }

    pub fn provenance_of(&self, m: &ChernMonomial) -> &str {
        self.provenance
            .get(&m.to_string())
            .or_else(|| self.provenance.get("*"))
            .map(String::as_str)
            .unwrap_or("")
    }

    fn from_rr(name: String, b2: u32, rr: &RRPoly) -> Result<Self> {
        let mut table = degree4_from_rr(rr)?;
        table.b2 = Some(b2);
        let provenance = BTreeMap::from([(
            "*".to_string(),
            "Riemann-Roch polynomial coefficients".to_string(),
        )]);
        Ok(ManifoldEntry {
            name,
            n: rr.n,
            b2,
            table,
            chern_q_coeffs: None,
            provenance,
        })
    }
}

const FIXTURES: &[(&str, &str)] = &[
    ("k3_2", include_str!("../fixtures/catalog/k3_2.json")),
    ("kum_2", include_str!("../fixtures/catalog/kum_2.json")),
    ("og6", include_str!("../fixtures/catalog/og6.json")),
    ("og10", include_str!("../fixtures/catalog/og10.json")),
];

/// Names of the tabulated entries; `k3n(N)` and `kumn(N)` are also accepted
/// by [`load_entry`].
pub const ENTRY_NAMES: [&str; 4] = ["k3_2", "kum_2", "og6", "og10"];

fn parse_family(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()
}

/// A tabulated entry, or the weight-4 data of `k3n(N)` / `kumn(N)` read off
/// their Riemann-Roch polynomials.
pub fn load_entry(name: &str) -> Result<ManifoldEntry> {
    if let Some((_, json)) = FIXTURES.iter().find(|(k, _)| *k == name) {
        return ManifoldEntry::from_json(json);
    }
    if let Some(n) = parse_family(name, "k3n") {
        if n < 2 {
            return Err(Error::pre("k3n needs n >= 2"));
        }
        return ManifoldEntry::from_rr(name.into(), 23, &rr_k3n(n));
    }
    if let Some(n) = parse_family(name, "kumn") {
        if n < 2 {
            return Err(Error::pre("kumn needs n >= 2"));
        }
        return ManifoldEntry::from_rr(name.into(), 7, &rr_kumn(n));
    }
    Err(Error::UnknownEntry(name.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub monomial: ChernMonomial,
    #[serde(with = "serde_str")]
    pub residual: Rational,
}

/// `C(prod c_{2k}^{e_k}) = prod mu_k^{e_k} * C(q^w)` with `w = sum k e_k`.
fn q_structure_value(
    m: &ChernMonomial,
    mu: &BTreeMap<u32, Rational>,
    n: u32,
    b2: u32,
    c1: &Rational,
) -> Result<Rational> {
    let mut coeff = Rational::one();
    for (k, e) in m.factors() {
        let k = k as u32;
        let mk = mu
            .get(&k)
            .ok_or_else(|| Error::pre(format!("no coefficient for c{}", 2 * k)))?;
        coeff *= pow(mk, e);
    }
    Ok(coeff * fujiki_q_power(m.weight() / 2, n, b2, c1)?)
}

/// `C(c_lambda) - (prod mu) C(q^k)` for every tabulated monomial.
pub fn verify_q_structure(entry: &ManifoldEntry) -> Result<Vec<Residual>> {
    let mu = entry
        .chern_q_coeffs
        .as_ref()
        .ok_or_else(|| Error::pre(format!("{} has no q-coefficients", entry.name)))?;
    let c1 = entry.table.c1()?;
    entry
        .table
        .entries
        .iter()
        .map(|(m, v)| {
            let expect = q_structure_value(m, mu, entry.n, entry.b2, &c1)?;
            Ok(Residual {
                monomial: *m,
                residual: v - expect,
            })
        })
        .collect()
}

/// Solves for `mu_1, ..., mu_n` assuming every `c_{2k}` is `mu_k q^k`:
/// the first two from the weight-4 constants, the rest one at a time from
/// the known value of `C(td^{1/2}_{2k})`.
pub fn og10_sequential_solve(rr: &RRPoly, b2: u32) -> Result<BTreeMap<u32, Rational>> {
    let n = rr.n;
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let d4 = degree4_from_rr(rr)?;
    let c1 = d4.c1()?;
    let c_c2 = d4.get(&ChernMonomial::c(1))?;
    let c_c4 = d4.get(&ChernMonomial::c(2))?;
    let mut mu = BTreeMap::new();
    mu.insert(1, &c_c2 / fujiki_q_power(1, n, b2, &c1)?);
    mu.insert(2, &c_c4 / fujiki_q_power(2, n, b2, &c1)?);
    let half = rr_half(n, &c1, &c_c2)?;
    for k in 3..=n.min(crate::genus::MAX_WEIGHT / 2) {
        let target = half.a(k as usize) * factorial_q(2 * n - 2 * k);
        let td = genus::sqrt_todd_component(k)?;
        let unknown = ChernMonomial::c(k as usize);
        let mut known = Rational::zero();
        let mut lead = Rational::zero();
        for (m, coeff) in td.terms() {
            if *m == unknown {
                lead = coeff.clone();
            } else {
                known += coeff * q_structure_value(m, &mu, n, b2, &c1)?;
            }
        }
        if lead.is_zero() {
            return Err(Error::SolveFailure(k));
        }
        let qk = fujiki_q_power(k, n, b2, &c1)?;
        mu.insert(k, (target - known) / (lead * qk));
    }
    Ok(mu)
}

/// Fills a table with `C(c_lambda) = prod mu * C(q^k)` up to weight `2n`.
pub fn table_from_q_coeffs(
    n: u32,
    b2: u32,
    c1: &Rational,
    mu: &BTreeMap<u32, Rational>,
) -> Result<FujikiTable> {
    let mut t = FujikiTable::new(n, Some(b2));
    for m in ChernMonomial::up_to_weight(2 * n) {
        t.insert(m, q_structure_value(&m, mu, n, b2, c1)?);
    }
    Ok(t)
}

/// Conjectured `C(ch4) / C(1) = 5(n+1) / ((2n-1)(2n-3))`.
pub fn conj_ch4_value(n: u32) -> Result<Rational> {
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let n = n as i64;
    Ok(int(5 * (n + 1)) / int((2 * n - 1) * (2 * n - 3)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ch8Report {
    #[serde(with = "serde_str")]
    pub ratio: Rational,
    #[serde(with = "serde_str")]
    pub conjectured: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// `C(ch4^2 + 120 ch8) C(1) / C(ch4)^2` against
/// `(5n+7)(2n-1)(2n-3) / (5(n+1)(2n-5)(2n-7))`.
pub fn conj_ch8_report(entry: &ManifoldEntry) -> Result<Ch8Report> {
    let n = entry.n as i64;
    if n < 4 {
        return Err(Error::pre("need 2n >= 8"));
    }
    let ch4 = genus::chern_character(2)?;
    let ch8 = genus::chern_character(4)?;
    let poly = ch4.mul(&ch4).expect("weight 8").add(&ch8.scale(&int(120)));
    let c4 = genus::evaluate(&ch4, &entry.table)?;
    let num = genus::evaluate(&poly, &entry.table)?;
    if c4.is_zero() {
        return Err(Error::pre("C(ch4) vanishes"));
    }
    let ratio = num * entry.table.c1()? / (&c4 * &c4);
    let conjectured =
        int((5 * n + 7) * (2 * n - 1) * (2 * n - 3)) / int(5 * (n + 1) * (2 * n - 5) * (2 * n - 7));
    Ok(Ch8Report {
        matches: ratio == conjectured,
        ratio,
        conjectured,
    })
}

/// `C(1)/(2n)! * (q + a)(q + a + 2) ... (q + a + 2n - 2)`.
pub fn rr_arith(n: u32, a: &Rational, c1: &Rational) -> Result<RRPoly> {
    if n < 2 {
        return Err(Error::pre("need n >= 2"));
    }
    let mut p = Poly::constant(c1 / factorial_q(2 * n));
    for i in 0..n {
        p = &p * &Poly::linear(a + int(2 * i as i64));
    }
    RRPoly::from_poly(&p)
}

/// Fourfold tables with `C(1) in (1/3)Z` between 3 and 46/3, `C(c2)^2 =
/// 4 (C(1)^2 + 72 C(1))` a rational square, `C(c2^2) = 864 - 12 C(1)` and
/// `C(c4) = 432 - 36 C(1)`.
pub fn enumerate_fourfold_tables() -> Vec<FujikiTable> {
    let mut out = Vec::new();
    for j in 9..=46i64 {
        let c1 = Rational::new(j.into(), 3.into());
        let Some(root) = sqrt_exact(&(&c1 * &c1 + int(72) * &c1)) else {
            continue;
        };
        let c2 = int(2) * root;
        out.push(FujikiTable::from_pairs(
            2,
            None,
            &[
                ("1", c1.clone()),
                ("c2", c2),
                ("c2^2", int(864) - int(12) * &c1),
                ("c4", int(432) - int(36) * &c1),
            ],
        ));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub b2: u32,
    pub b3: u32,
    pub b4: u32,
}

/// For each table from [`enumerate_fourfold_tables`]: `b3 = 4 b2 - (C(c4) - 48)/3`
/// a nonnegative multiple of 4, `b2` between 3 and the Betti bound of the
/// table, `b4 = C(c4) - 2 - 2 b2 + 2 b3`.
pub fn enumerate_betti() -> Result<Vec<BettiRow>> {
    let mut out = Vec::new();
    for t in enumerate_fourfold_tables() {
        let c4 = t.get(&ChernMonomial::c(2))?;
        let mu = t.get(&ChernMonomial::c(1).pow(2))? / &c4;
        let Some(bound) = b2_bound_from_mu(2, &mu).bound else {
            continue;
        };
        let max_b2 = bound.floor().to_integer();
        let rhs = (&c4 - int(48)) / int(3);
        if !rhs.is_integer() || !c4.is_integer() {
            continue;
        }
        let rhs = rhs.to_integer();
        let c4 = c4.to_integer();
        let mut b2 = num_bigint::BigInt::from(3);
        while b2 <= max_b2 {
            let b3 = 4 * &b2 - &rhs;
            if b3 >= 0.into() && (&b3 % 4u32) == 0.into() {
                let b4 = &c4 - 2 - 2 * &b2 + 2 * &b3;
                let conv = |x: &num_bigint::BigInt| {
                    u32::try_from(x).map_err(|_| Error::pre("Betti number out of range"))
                };
                out.push(BettiRow {
                    b2: conv(&b2)?,
                    b3: conv(&b3)?,
                    b4: conv(&b4)?,
                });
            }
            b2 += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignViolation {
    pub class: String,
    #[serde(with = "serde_str")]
    pub value: Rational,
}

/// Partitions of `k` into parts in `1..=MAX_HALF_INDEX`, largest first.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    ChernMonomial::of_weight(2 * k)
        .into_iter()
        .map(|m| {
            let mut parts = Vec::new();
            for (i, e) in m.factors() {
                parts.extend(std::iter::repeat_n(i as u32, e as usize));
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            parts
        })
        .collect()
}

/// Monomials of weight `2..=2n` where `(-1)^k C(ch_{2k_1} ... ch_{2k_r})` or
/// `C(c_{2k_1} ... c_{2k_r})` fails to be positive, `k = sum k_i`.
pub fn conj_positivity_sc(table: &FujikiTable) -> Result<Vec<SignViolation>> {
    let mut out = Vec::new();
    for k in 1..=table.n {
        for parts in partitions(k) {
            let mut p = ChernPolynomial::one();
            for &i in &parts {
                p = p
                    .mul(&genus::chern_character(i)?)
                    .ok_or(Error::Unsupported("weight above 10".into()))?;
            }
            let v = genus::evaluate(&p, table)?;
            let signed = if k % 2 == 0 { v.clone() } else { -v.clone() };
            if !signed.is_positive() {
                let name: Vec<String> = parts.iter().map(|i| format!("ch{}", 2 * i)).collect();
                out.push(SignViolation {
                    class: name.join("."),
                    value: v,
                });
            }
        }
        for m in ChernMonomial::of_weight(2 * k) {
            let v = table.get(&m)?;
            if !v.is_positive() {
                out.push(SignViolation {
                    class: m.to_string(),
                    value: v,
                });
            }
        }
    }
    Ok(out)
}
