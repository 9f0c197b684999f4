//! Arbitrary-precision rationals and the `p/q` text format used everywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not a rational: '{s}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not a rational: '{s}'")))?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(num, den))
}

/// `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

/// Decimal rendering for display columns only.
pub fn approx(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled: BigInt = (a.numer() * &scale * 2 + a.denom()) / (a.denom() * 2);
    let (ip, fp) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !(ip.is_zero() && fp.is_zero()) {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if digits > 0 {
        s.push('.');
        s.push_str(&format!("{:0>width$}", fp.to_string(), width = digits));
    }
    s
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_q(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root when `x` is the square of a rational.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    let n = isqrt_exact(x.numer())?;
    let d = isqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

/// Split a positive integer as `a^2 * s` with `s` squarefree.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut sq = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            sq *= &p;
        }
        p += 1;
    }
    (sq, rest)
}

/// `coeff * sqrt(radicand)` with the radicand reduced to a quotient of
/// squarefree integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    pub coeff: Rational,
    pub radicand: Rational,
}

impl Surd {
    /// `sqrt(x)` with a squarefree integer radicand, e.g. `sqrt(1/2) = (1/2)*sqrt(2)`.
    pub fn sqrt_of(x: &Rational) -> Option<Surd> {
        if x.is_negative() {
            return None;
        }
        let scaled = Rational::from_integer(x.numer() * x.denom());
        let s = Self::sqrt_of_split(&scaled)?;
        Some(Surd {
            coeff: s.coeff / Rational::from_integer(x.denom().clone()),
            radicand: s.radicand,
        })
    }

    /// `sqrt(x)` with numerator and denominator reduced separately, so that
    /// `sqrt(676/3) = 26*sqrt(1/3)`.
    pub fn sqrt_of_split(x: &Rational) -> Option<Surd> {
        if x.is_negative() {
            return None;
        }
        if x.is_zero() {
            return Some(Surd {
                coeff: Rational::zero(),
                radicand: Rational::one(),
            });
        }
        let (a, p) = square_part(x.numer());
        let (b, q) = square_part(x.denom());
        Some(Surd {
            coeff: Rational::new(a, b),
            radicand: Rational::new(p, q),
        })
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one() || self.coeff.is_zero()
    }

    /// Renders `coeff*sqrt(radicand*sym)`, e.g. `26*sqrt(C1/3)`.
    pub fn render_with(&self, sym: &str) -> String {
        let inner = match (
            self.radicand.numer().is_one(),
            self.radicand.denom().is_one(),
        ) {
            (true, true) => sym.to_string(),
            (false, true) => format!("{}*{sym}", self.radicand.numer()),
            (true, false) => format!("{sym}/{}", self.radicand.denom()),
            (false, false) => format!("{}*{sym}/{}", self.radicand.numer(), self.radicand.denom()),
        };
        if self.coeff.is_one() {
            format!("sqrt({inner})")
        } else {
            format!("{}*sqrt({inner})", self.coeff)
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Serde adapter storing rationals as `"p/q"` strings; integers are also
/// accepted on input.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        I(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::S(s) => parse_rational(&s).map_err(de::Error::custom),
            Raw::I(i) => Ok(int(i)),
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            xs: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&fmt_rational(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            Vec::<Raw>::deserialize(d)?
                .into_iter()
                .map(|r| match r {
                    Raw::S(s) => parse_rational(&s).map_err(de::Error::custom),
                    Raw::I(i) => Ok(int(i)),
                })
                .collect()
        }
    }

    pub mod map {
        use super::*;
        use std::collections::BTreeMap;

        pub fn serialize<K: serde::Serialize + Ord, S: Serializer>(
            m: &BTreeMap<K, Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            use serde::ser::SerializeMap;
            let mut out = s.serialize_map(Some(m.len()))?;
            for (k, v) in m {
                out.serialize_entry(k, &fmt_rational(v))?;
            }
            out.end()
        }

        pub fn deserialize<'de, K, D>(d: D) -> std::result::Result<BTreeMap<K, Rational>, D::Error>
        where
            K: Deserialize<'de> + Ord,
            D: Deserializer<'de>,
        {
            BTreeMap::<K, Raw>::deserialize(d)?
                .into_iter()
                .map(|(k, r)| {
                    let v = match r {
                        Raw::S(s) => parse_rational(&s).map_err(de::Error::custom)?,
                        Raw::I(i) => int(i),
                    };
                    Ok((k, v))
                })
                .collect()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(
            x: &Option<Rational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_str(&fmt_rational(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Rational>, D::Error> {
            match Option::<Raw>::deserialize(d)? {
                None => Ok(None),
                Some(Raw::S(s)) => parse_rational(&s).map(Some).map_err(de::Error::custom),
                Some(Raw::I(i)) => Ok(Some(int(i))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(" -17 ").unwrap(), int(-17));
        assert_eq!(fmt_rational(&frac(261, 2)), "261/2");
        assert_eq!(fmt_rational(&frac(8, 4)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn approx_rounds() {
        assert_eq!(approx(&frac(135, 17), 2), "7.94");
        assert_eq!(approx(&frac(-1, 3), 3), "-0.333");
        assert_eq!(approx(&int(5), 0), "5");
    }

    #[test]
    fn surd_normal_form() {
        let s = Surd::sqrt_of_split(&frac(676, 3)).unwrap();
        assert_eq!(s.coeff, int(26));
        assert_eq!(s.radicand, frac(1, 3));
        assert_eq!(s.render_with("C1"), "26*sqrt(C1/3)");
        let s = Surd::sqrt_of_split(&int(192)).unwrap();
        assert_eq!(s.render_with("C1"), "8*sqrt(3*C1)");
        let s = Surd::sqrt_of(&frac(1, 2)).unwrap();
        assert_eq!((s.coeff, s.radicand), (frac(1, 2), int(2)));
        let s = Surd::sqrt_of_split(&int(100)).unwrap();
        assert_eq!(s.render_with("C1"), "10*sqrt(C1)");
        assert!(Surd::sqrt_of(&int(-1)).is_none());
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(sqrt_exact(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }
}
