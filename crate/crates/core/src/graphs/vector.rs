//! Linear combinations of products of catalog graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::Rational;

/// Connected graphs that serve as free generators of the graph algebra in
/// low degree, plus the vertexless circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    Circle,
    Theta,
    Theta2,
    Theta3,
    Theta4,
    Xi,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Circle,
        Generator::Theta,
        Generator::Theta2,
        Generator::Theta3,
        Generator::Theta4,
        Generator::Xi,
    ];

    /// Half the number of trivalent vertices.
    pub fn degree(self) -> u32 {
        match self {
            Generator::Circle => 0,
            Generator::Theta => 1,
            Generator::Theta2 => 2,
            Generator::Theta3 => 3,
            Generator::Theta4 | Generator::Xi => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Circle => "O",
            Generator::Theta => "Theta",
            Generator::Theta2 => "Theta2",
            Generator::Theta3 => "Theta3",
            Generator::Theta4 => "Theta4",
            Generator::Xi => "Xi",
        }
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A product of generators, kept sorted; the empty product is the empty graph.
pub type GraphMonomial = Vec<Generator>;

fn monomial_label(m: &GraphMonomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(m[i].name().to_string());
        } else {
            parts.push(format!("{}^{}", m[i].name(), j - i));
        }
        i = j;
    }
    parts.join("*")
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphVector {
    terms: BTreeMap<GraphMonomial, Rational>,
}

impl GraphVector {
    pub fn zero() -> Self {
        GraphVector::default()
    }

    pub fn one() -> Self {
        Self::term(Vec::new(), Rational::one())
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(vec![g], Rational::one())
    }

    pub fn term(mut m: GraphMonomial, c: Rational) -> Self {
        m.sort();
        let mut v = GraphVector::zero();
        v.add_term(m, c);
        v
    }

    pub fn add_term(&mut self, m: GraphMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[Generator]) -> Rational {
        let mut k = m.to_vec();
        k.sort();
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GraphMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> GraphVector {
        let mut out = GraphVector::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> GraphVector {
        (0..e).fold(GraphVector::one(), |acc, _| &acc * self)
    }

    /// Drop every term whose total degree exceeds `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> GraphVector {
        let mut out = GraphVector::zero();
        for (m, c) in &self.terms {
            if m.iter().map(|g| g.degree()).sum::<u32>() <= max_degree {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Key/value rendering with sorted monomial labels.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(m, c)| (monomial_label(m), c.to_string()))
            .collect()
    }

    /// Substitute a scalar for each generator.
    pub fn evaluate(&self, value: impl Fn(Generator) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for g in m {
                t *= value(*g);
            }
            acc += t;
        }
        acc
    }
}

impl Add for &GraphVector {
    type Output = GraphVector;
    fn add(self, rhs: &GraphVector) -> GraphVector {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Mul for &GraphVector {
    type Output = GraphVector;
    fn mul(self, rhs: &GraphVector) -> GraphVector {
        let mut out = GraphVector::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut m = a.clone();
                m.extend(b.iter().copied());
                m.sort();
                out.add_term(m, x * y);
            }
        }
        out
    }
}

impl fmt::Display for GraphVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // lower degree first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| (m.iter().map(|g| g.degree()).sum::<u32>(), (*m).clone()));
        let parts: Vec<String> = items
            .into_iter()
            .map(|(m, c)| {
                if m.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    monomial_label(m)
                } else {
                    format!("{c}*{}", monomial_label(m))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    #[test]
    fn products_commute_and_cancel() {
        let t = GraphVector::generator(Generator::Theta);
        let t2 = GraphVector::generator(Generator::Theta2);
        assert_eq!(&t * &t2, &t2 * &t);
        let s = &GraphVector::one() + &t.scale(&frac(1, 12));
        let sq = s.pow(2);
        assert_eq!(
            sq.coeff(&[Generator::Theta, Generator::Theta]),
            frac(1, 144)
        );
        let z = &t + &t.scale(&int(-1));
        assert!(z.is_zero());
    }

    #[test]
    fn display_order() {
        let v = &GraphVector::one()
            + &GraphVector::term(vec![Generator::Theta, Generator::Theta], frac(1, 144));
        assert_eq!(v.to_string(), "1 + 1/144*Theta^2");
        assert_eq!(v.to_map().get("Theta^2").map(String::as_str), Some("1/144"));
    }
}
