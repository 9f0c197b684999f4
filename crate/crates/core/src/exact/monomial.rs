//! Chern monomials `c_2^{e_1} c_4^{e_2} ... c_10^{e_5}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Highest supported Chern class index is `c_{2 * MAX_HALF_INDEX}`.
pub const MAX_HALF_INDEX: usize = 5;

/// Exponents of `c_2, c_4, ..., c_10`. The weight is the cohomological
/// half-degree, so `c_2^2` and `c_4` both have weight 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChernMonomial {
    exps: [u32; MAX_HALF_INDEX],
}

impl ChernMonomial {
    pub const ONE: ChernMonomial = ChernMonomial {
        exps: [0; MAX_HALF_INDEX],
    };

    /// The class `c_{2k}`.
    pub fn c(k: usize) -> Self {
        assert!(
            (1..=MAX_HALF_INDEX).contains(&k),
            "c_{} out of range",
            2 * k
        );
        let mut exps = [0; MAX_HALF_INDEX];
        exps[k - 1] = 1;
        ChernMonomial { exps }
    }

    pub fn from_exponents(exps: [u32; MAX_HALF_INDEX]) -> Self {
        ChernMonomial { exps }
    }

    /// Exponent of `c_{2k}`.
    pub fn exponent(&self, k: usize) -> u32 {
        self.exps[k - 1]
    }

    pub fn exponents(&self) -> &[u32; MAX_HALF_INDEX] {
        &self.exps
    }

    pub fn weight(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, e)| 2 * (i as u32 + 1) * e)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &ChernMonomial) -> ChernMonomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        ChernMonomial { exps }
    }

    pub fn pow(&self, e: u32) -> ChernMonomial {
        ChernMonomial {
            exps: self.exps.map(|x| x * e),
        }
    }

    /// Iterate `(k, exponent)` over the classes present.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
    }

    /// All monomials of exactly the given (even) weight.
    pub fn of_weight(weight: u32) -> Vec<ChernMonomial> {
        fn rec(
            rest: u32,
            max_k: usize,
            cur: &mut [u32; MAX_HALF_INDEX],
            out: &mut Vec<ChernMonomial>,
        ) {
            if rest == 0 {
                out.push(ChernMonomial { exps: *cur });
                return;
            }
            for k in (1..=max_k).rev() {
                if k as u32 <= rest {
                    cur[k - 1] += 1;
                    rec(rest - k as u32, k, cur, out);
                    cur[k - 1] -= 1;
                }
            }
        }
        let mut out = Vec::new();
        if weight % 2 == 1 || weight as usize > 2 * MAX_HALF_INDEX * 64 {
            return out;
        }
        rec(
            weight / 2,
            MAX_HALF_INDEX,
            &mut [0; MAX_HALF_INDEX],
            &mut out,
        );
        out.sort();
        out
    }

    /// All monomials of weight at most `max_weight`, including `1`.
    pub fn up_to_weight(max_weight: u32) -> Vec<ChernMonomial> {
        (0..=max_weight / 2)
            .flat_map(|h| Self::of_weight(2 * h))
            .collect()
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(k, e)| {
                if e == 1 {
                    format!("c{}", 2 * k)
                } else {
                    format!("c{}^{}", 2 * k, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for ChernMonomial {
    type Err = Error;

    /// Accepts `1`, `c2`, `c2^2.c4`, `c4*c2^3`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a Chern monomial: '{s}'"));
        if s == "1" {
            return Ok(Self::ONE);
        }
        let mut exps = [0u32; MAX_HALF_INDEX];
        for part in s.split(['.', '*']) {
            let part = part.trim();
            let rest = part.strip_prefix('c').ok_or_else(bad)?;
            let (idx, e) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx % 2 == 1 || idx / 2 > MAX_HALF_INDEX {
                return Err(bad());
            }
            exps[idx / 2 - 1] += e;
        }
        Ok(ChernMonomial { exps })
    }
}

impl Serialize for ChernMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ChernMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_by_weight() {
        // partitions of 1..5 into parts <= 5
        let counts: Vec<usize> = (1..=5)
            .map(|h| ChernMonomial::of_weight(2 * h).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7]);
        assert_eq!(ChernMonomial::up_to_weight(10).len(), 1 + 1 + 2 + 3 + 5 + 7);
        assert!(ChernMonomial::of_weight(3).is_empty());
    }

    #[test]
    fn display_and_parse() {
        let m = ChernMonomial::c(1).pow(2).mul(&ChernMonomial::c(2));
        assert_eq!(m.to_string(), "c4.c2^2");
        assert_eq!(m.weight(), 8);
        assert_eq!("c2^2.c4".parse::<ChernMonomial>().unwrap(), m);
        assert_eq!("c4*c2^2".parse::<ChernMonomial>().unwrap(), m);
        assert_eq!("1".parse::<ChernMonomial>().unwrap(), ChernMonomial::ONE);
        assert!("c3".parse::<ChernMonomial>().is_err());
        assert!("c12".parse::<ChernMonomial>().is_err());
    }
}
