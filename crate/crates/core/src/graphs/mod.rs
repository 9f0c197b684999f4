//! Jacobi-diagram calculus: the gluing pairing, reduction to catalog graphs,
//! wheeling expansions and the scalar invariants attached to catalog graphs.

pub mod canon;
pub mod diagram;
pub mod homology;
pub mod rw;
pub mod vector;
pub mod wheeling;

use std::collections::BTreeMap;

pub use canon::{Canon, Canonicalizer};
pub use diagram::{ClosedGraph, Diagram};
pub use homology::ReductionTable;
pub use rw::{b_evaluate, b_gamma, b_monomial, rr_from_b};
pub use vector::{Generator, GraphVector};
pub use wheeling::{expected_wheeling, modified_bernoulli, IdentityCheck};

use crate::error::Result;
use crate::exact::Rational;

/// Holds the canonical-form cache and the reduction tables built so far.
#[derive(Debug, Default)]
pub struct GraphCalculus {
    canon: Canonicalizer,
    tables: BTreeMap<usize, ReductionTable>,
}

impl GraphCalculus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, degree: usize) -> &ReductionTable {
        if !self.tables.contains_key(&degree) {
            let t = ReductionTable::build(degree, &mut self.canon);
            self.tables.insert(degree, t);
        }
        &self.tables[&degree]
    }

    /// Reduce a closed graph (possibly disconnected) to catalog generators.
    pub fn reduce(&mut self, g: &ClosedGraph) -> Result<GraphVector> {
        let mut acc = GraphVector::one();
        for _ in 0..g.circles {
            acc = &acc * &GraphVector::generator(Generator::Circle);
        }
        for comp in g.components() {
            let sub = g.restrict(&comp);
            let c = self.canon.canon(&sub);
            let Some(sign) = c.sign else {
                return Ok(GraphVector::zero());
            };
            let degree = comp.len() / 2;
            let v = self.table(degree).lookup(&c.code)?;
            acc = &acc * &v.scale(&Rational::from_integer((sign as i64).into()));
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        Ok(acc)
    }

    /// `<a, b>`: the sum over all bijections between the legs of `a` and `b`.
    /// Diagrams with different leg counts pair to zero.
    pub fn glue(&mut self, a: &Diagram, b: &Diagram) -> Result<GraphVector> {
        let n = a.leg_count();
        if n != b.leg_count() {
            return Ok(GraphVector::zero());
        }
        let mut acc = GraphVector::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let g = a.glue_with(b, &perm);
            acc = &acc + &self.reduce(&g)?;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(acc)
    }

    /// `<a, l^k>` where `a` has `2k` legs, summed over perfect matchings and
    /// multiplied by the `2^k k!` bijections realizing each matching.
    pub fn glue_struts(&mut self, a: &Diagram) -> Result<GraphVector> {
        let n = a.leg_count();
        if n % 2 == 1 {
            return Ok(GraphVector::zero());
        }
        let mut acc = GraphVector::zero();
        for m in perfect_matchings(n) {
            acc = &acc + &self.reduce(&a.close_legs(&m))?;
        }
        let k = (n / 2) as u32;
        let mult = Rational::from_integer(
            crate::exact::factorial(k) * num_bigint::BigInt::from(1u64 << k),
        );
        Ok(acc.scale(&mult))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All perfect matchings of `0..n`, each as a list of pairs.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rest: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = rest.remove(0);
        for i in 0..rest.len() {
            let b = rest.remove(i);
            cur.push((a, b));
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, b);
        }
        rest.insert(0, a);
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}
