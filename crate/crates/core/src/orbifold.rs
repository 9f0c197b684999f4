//! Four-dimensional symplectic orbifolds with isolated cyclic quotient
//! singularities: local Gauss-Bonnet and Riemann-Roch corrections, the
//! degree-4 Fujiki constants they determine, and the fixed-point count for
//! the order-4 quotient of a generalized Kummer fourfold.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::rational::serde_str;
use crate::exact::{galois_inverse_sum, int, solve, Rational, Surd};
use crate::rr::{b2_bound_from_mu, b2_bound_from_rr, BoundReport, RRPoly};

/// `count` isolated points whose local group is cyclic of order `order`,
/// acting on the tangent space with the given weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicStratum {
    pub order: u32,
    pub count: u32,
    pub weights: [u32; 4],
}

impl CyclicStratum {
    pub fn new(order: u32, count: u32, weights: [u32; 4]) -> Result<Self> {
        let s = CyclicStratum {
            order,
            count,
            weights,
        };
        s.validate()?;
        Ok(s)
    }

    /// Weights `(1,1,1,1)`, `(1,2,1,2)` or `(1,3,1,3)` for orders 2, 3, 4.
    pub fn standard(order: u32, count: u32) -> Result<Self> {
        match order {
            2..=4 => Self::new(order, count, [1, order - 1, 1, order - 1]),
            _ => Err(Error::pre(format!("no standard weights for order {order}"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.order;
        if m < 2 {
            return Err(Error::pre(format!("order must be at least 2, got {m}")));
        }
        if self.count == 0 {
            return Err(Error::pre("stratum count must be positive"));
        }
        if let Some(w) = self.weights.iter().find(|&&w| w == 0 || w >= m) {
            return Err(Error::pre(format!("weight {w} not in [1, {}]", m - 1)));
        }
        let mut w = self.weights.to_vec();
        let mut dual: Vec<u32> = w.iter().map(|&x| m - x).collect();
        w.sort_unstable();
        dual.sort_unstable();
        if w != dual {
            return Err(Error::pre(format!(
                "weights {:?} are not closed under w -> {m} - w",
                self.weights
            )));
        }
        Ok(())
    }
}

/// Average of `1 / det(Id - g)` over the non-identity elements of the local group.
pub fn rr_point_correction(s: &CyclicStratum) -> Result<Rational> {
    s.validate()?;
    Ok(galois_inverse_sum(s.order, &s.weights)? / int(s.order as i64))
}

/// `1 - 1/m`.
pub fn euler_point_correction(m: u32) -> Result<Rational> {
    if m < 2 {
        return Err(Error::pre(format!("order must be at least 2, got {m}")));
    }
    Ok(Rational::one() - Rational::new(1.into(), m.into()))
}

/// Lexicographically first admissible weights `(a, m-a, b, m-b)` with
/// `a <= b` whose point correction equals `target`.
pub fn search_weights(m: u32, target: &Rational) -> Option<[u32; 4]> {
    for a in 1..m {
        for b in a..m {
            let s = CyclicStratum {
                order: m,
                count: 1,
                weights: [a, m - a, b, m - b],
            };
            if rr_point_correction(&s).ok().as_ref() == Some(target) {
                return Some(s.weights);
            }
        }
    }
    None
}

fn default_chi_structure() -> Rational {
    int(3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldProfile {
    pub name: String,
    #[serde(rename = "half_dim_n")]
    pub n: u32,
    pub b2: u32,
    #[serde(with = "serde_str")]
    pub chi_top: Rational,
    #[serde(
        rename = "fujiki_c1",
        default,
        with = "serde_str::opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub c1: Option<Rational>,
    #[serde(rename = "singularities")]
    pub strata: Vec<CyclicStratum>,
    #[serde(default = "default_chi_structure", with = "serde_str")]
    pub chi_structure: Rational,
    #[serde(
        default,
        with = "serde_str::map",
        skip_serializing_if = "BTreeMap::is_empty"
    )]
    pub salamon_contrib: BTreeMap<u32, Rational>,
}

impl OrbifoldProfile {
    pub fn from_json(s: &str) -> Result<Self> {
        let p: OrbifoldProfile =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n != 2 {
            return Err(Error::Unsupported(format!(
                "orbifold derivations need n = 2, got {}",
                self.n
            )));
        }
        for s in &self.strata {
            s.validate()?;
        }
        let euler = self.euler_correction()?;
        if self.chi_top < euler {
            return Err(Error::pre(format!(
                "chi_top {} is below the singular correction {euler}",
                self.chi_top
            )));
        }
        if let Some(c1) = &self.c1 {
            if *c1 <= Rational::zero() {
                return Err(Error::pre("C(1) must be positive"));
            }
        }
        Ok(())
    }

    /// `sum_m a_m (1 - 1/m)`.
    pub fn euler_correction(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for s in &self.strata {
            acc += euler_point_correction(s.order)? * int(s.count as i64);
        }
        Ok(acc)
    }

    /// `sum_x` of the per-point Riemann-Roch corrections.
    pub fn rr_correction(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for s in &self.strata {
            acc += rr_point_correction(s)? * int(s.count as i64);
        }
        Ok(acc)
    }

    /// Per-point Salamon contribution, defaulting to -1 and -3 for orders 2 and 4.
    pub fn salamon_point(&self, order: u32) -> Option<Rational> {
        self.salamon_contrib.get(&order).cloned().or(match order {
            2 => Some(int(-1)),
            4 => Some(int(-3)),
            _ => None,
        })
    }

    /// `chi_top - (48 + 12 b2 + sum a_m s_m)`, or `None` when some order has
    /// no known contribution.
    pub fn salamon_residual(&self) -> Option<Rational> {
        let mut s = Rational::zero();
        for st in &self.strata {
            s += self.salamon_point(st.order)? * int(st.count as i64);
        }
        Some(&self.chi_top - int(48 + 12 * self.b2 as i64) - s)
    }
}

/// `C(c2)`: exact when `C(1)` is known, otherwise `coeff * sqrt(radicand * C(1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C2Value {
    Exact(Rational),
    Radical(Surd),
}

impl fmt::Display for C2Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C2Value::Exact(x) => write!(f, "{x}"),
            C2Value::Radical(s) => f.write_str(&s.render_with("C1")),
        }
    }
}

impl Serialize for C2Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedInvariants {
    pub name: String,
    #[serde(with = "serde_str")]
    pub c_c4: Rational,
    #[serde(with = "serde_str")]
    pub c_td4: Rational,
    #[serde(with = "serde_str")]
    pub c_c2sq: Rational,
    pub c_c2: C2Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rr: Option<RRPoly>,
    pub bound: BoundReport,
    #[serde(with = "serde_str")]
    pub chi_structure: Rational,
}

impl DerivedInvariants {
    /// `3 C(c2^2) - C(c4) = 720 C(td4)`.
    pub fn is_consistent(&self) -> bool {
        int(3) * &self.c_c2sq - &self.c_c4 == int(720) * &self.c_td4
    }
}

/// Degree-4 Fujiki constants from the orbifold Gauss-Bonnet and Riemann-Roch
/// corrections.
pub fn derive(profile: &OrbifoldProfile) -> Result<DerivedInvariants> {
    profile.validate()?;
    let c_c4 = &profile.chi_top - profile.euler_correction()?;
    let c_td4 = &profile.chi_structure - profile.rr_correction()?;
    let c_c2sq = (int(720) * &c_td4 + &c_c4) / int(3);
    // C(c2)^2 = C(1) * radicand
    let radicand = (int(7) * &c_c2sq - int(4) * &c_c4) / int(15);
    if radicand.is_negative() {
        return Err(Error::IrrationalC2(format!(
            "negative radicand {radicand} for {}",
            profile.name
        )));
    }
    let mu = if c_c4.is_zero() {
        None
    } else {
        Some(&c_c2sq / &c_c4)
    };
    let (c_c2, rr, bound) = match &profile.c1 {
        Some(c1) => {
            let sq = c1 * &radicand;
            let Some(c2) = crate::exact::sqrt_exact(&sq) else {
                return Err(Error::IrrationalC2(format!(
                    "C(c2)^2 = {sq} is not a rational square for {}",
                    profile.name
                )));
            };
            let rr = RRPoly::new(2, vec![c1 / int(24), &c2 / int(24), c_td4.clone()])?;
            let mut bound = b2_bound_from_rr(&rr)?;
            bound.mu = mu;
            (C2Value::Exact(c2), Some(rr), bound)
        }
        None => {
            let surd = Surd::sqrt_of_split(&radicand).expect("nonnegative");
            let bound = match &mu {
                Some(m) => b2_bound_from_mu(2, m),
                None => return Err(Error::pre("C(c4) vanishes")),
            };
            (C2Value::Radical(surd), None, bound)
        }
    };
    let inv = DerivedInvariants {
        name: profile.name.clone(),
        c_c4,
        c_td4,
        c_c2sq,
        c_c2,
        rr,
        bound,
        chi_structure: profile.chi_structure.clone(),
    };
    debug_assert!(inv.is_consistent());
    Ok(inv)
}

/// `chi(X, L) = RR(q) + chi_structure - C(td4)`.
pub fn chi_line_bundle(inv: &DerivedInvariants, q: &Rational) -> Result<Rational> {
    let rr = inv
        .rr
        .as_ref()
        .ok_or_else(|| Error::pre("C(1) is needed to evaluate the RR polynomial"))?;
    Ok(rr.eval(q) + &inv.chi_structure - &inv.c_td4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct K4FixedPoints {
    /// Isolated fixed points of the square of the order-4 automorphism.
    pub sigma2_fixed: u32,
    /// Non-vertex points among those fixed by the automorphism itself.
    pub sigma_invariant_triples: u32,
    pub a4: u32,
}

/// Counts on the 2-torsion of `E x E`, written as `(Z/2)^4` with coordinates
/// `(a1, a2, b1, b2)`: unordered triples `{x, y, x + y}` of distinct nonzero
/// points, plus the vertex, and those invariant under `(a, b) -> (b, a)`.
pub fn k4_fixed_points() -> K4FixedPoints {
    let swap = |p: u8| ((p & 0b11) << 2) | (p >> 2);
    let mut triples = Vec::new();
    for x in 1u8..16 {
        for y in (x + 1)..16 {
            let z = x ^ y;
            if z > y {
                triples.push([x, y, z]);
            }
        }
    }
    let invariant = triples
        .iter()
        .filter(|t| {
            let mut s = t.map(swap);
            s.sort_unstable();
            s == **t
        })
        .count() as u32;
    K4FixedPoints {
        sigma2_fixed: triples.len() as u32 + 1,
        sigma_invariant_triples: invariant,
        a4: invariant + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K4Solution {
    #[serde(with = "serde_str")]
    pub ramification: Rational,
    #[serde(with = "serde_str")]
    pub a2: Rational,
    #[serde(with = "serde_str")]
    pub chi: Rational,
}

/// Solves for the ramification count `R`, `a2` and `chi` of the order-4
/// quotient from
/// `2 chi - R = 108`, `a2 = (36 - a4)/2 + R - a4` and
/// `chi = 48 + 12 * 6 - a2 - 3 a4`.
pub fn k4_solve(a4: u32) -> Result<K4Solution> {
    let a4 = int(a4 as i64);
    // unknowns (R, a2, chi)
    let a = vec![
        vec![int(-1), int(0), int(2)],
        vec![int(-1), int(1), int(0)],
        vec![int(0), int(1), int(1)],
    ];
    let b = vec![
        int(108),
        (int(36) - &a4) / int(2) - &a4,
        int(48 + 72) - int(3) * &a4,
    ];
    let x = solve(&a, &b)?;
    Ok(K4Solution {
        ramification: x[0].clone(),
        a2: x[1].clone(),
        chi: x[2].clone(),
    })
}

/// The profile of the order-4 quotient assembled from [`k4_fixed_points`]
/// and [`k4_solve`].
pub fn k4_profile() -> Result<OrbifoldProfile> {
    let fp = k4_fixed_points();
    let sol = k4_solve(fp.a4)?;
    let a2 = sol
        .a2
        .to_integer()
        .try_into()
        .map_err(|_| Error::pre("a2 out of range"))?;
    if !sol.a2.is_integer() || !sol.chi.is_integer() {
        return Err(Error::pre("non-integral fixed-point data"));
    }
    Ok(OrbifoldProfile {
        name: "K4'".into(),
        n: 2,
        b2: 6,
        chi_top: sol.chi,
        c1: None,
        strata: vec![
            CyclicStratum::standard(2, a2)?,
            CyclicStratum::standard(4, fp.a4)?,
        ],
        chi_structure: default_chi_structure(),
        salamon_contrib: BTreeMap::new(),
    })
}

const FIXTURES: &[(&str, &str)] = &[
    (
        "m_prime",
        include_str!("../fixtures/orbifolds/m_prime.json"),
    ),
    (
        "k_prime",
        include_str!("../fixtures/orbifolds/k_prime.json"),
    ),
    ("kim", include_str!("../fixtures/orbifolds/kim.json")),
    ("m3", include_str!("../fixtures/orbifolds/m3.json")),
    ("m7", include_str!("../fixtures/orbifolds/m7.json")),
    ("m11", include_str!("../fixtures/orbifolds/m11.json")),
    (
        "k4_prime",
        include_str!("../fixtures/orbifolds/k4_prime.json"),
    ),
    (
        "k3_prime",
        include_str!("../fixtures/orbifolds/k3_prime.json"),
    ),
    (
        "y_k3_z4",
        include_str!("../fixtures/orbifolds/y_k3_z4.json"),
    ),
    (
        "y_k3_z2xz2",
        include_str!("../fixtures/orbifolds/y_k3_z2xz2.json"),
    ),
];

/// Keys of the bundled profiles.
pub fn shipped_keys() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(k, _)| *k)
}

pub fn shipped_profile(key: &str) -> Result<OrbifoldProfile> {
    let (_, json) = FIXTURES
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| Error::UnknownEntry(key.to_string()))?;
    OrbifoldProfile::from_json(json)
}
