//! Connected trivalent graphs of a fixed degree modulo antisymmetry and IHX.
//!
//! All connected graphs of the degree are reached from one seed by IHX moves.
//! Every (edge, orientation) of every graph contributes one three-term
//! relation; exact Gaussian elimination with the catalog graphs ordered last
//! expresses each graph in terms of the catalog generators.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};

use super::canon::{Canon, Canonicalizer, Code};
use super::diagram::{rot, ClosedGraph, Diagram};
use super::vector::{Generator, GraphVector};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// The oriented graph standing for each generator.
pub fn catalog_graph(g: Generator) -> Option<ClosedGraph> {
    match g {
        Generator::Circle => None,
        Generator::Theta => Some(Diagram::necklace(1)),
        Generator::Theta2 => Some(Diagram::necklace(2)),
        Generator::Theta3 => Some(Diagram::necklace(3)),
        Generator::Theta4 => Some(Diagram::necklace(4)),
        Generator::Xi => Some(xi_graph()),
    }
}

/// The cube graph, completing the degree-four basis: two 4-wheels with
/// corresponding spokes joined.
pub fn xi_graph() -> ClosedGraph {
    Diagram::wheel(4).glue_with(&Diagram::wheel(4), &[0, 1, 2, 3])
}

fn generators_of_degree(d: usize) -> Vec<Generator> {
    Generator::ALL
        .into_iter()
        .filter(|g| g.degree() as usize == d && *g != Generator::Circle)
        .collect()
}

/// The three graphs `T(a,b|c,d)`, `T(b,c|a,d)`, `T(c,a|b,d)` of the IHX
/// relation on the edge through dart `du`, or `None` if that edge is a loop.
pub fn ihx_terms(g: &ClosedGraph, du: u32) -> Option<[ClosedGraph; 3]> {
    let dv = g.mate[du as usize];
    if du / 3 == dv / 3 {
        return None;
    }
    let slots = [rot(du), rot(rot(du)), rot(dv), rot(rot(dv))];
    let ext: Vec<u32> = slots.iter().map(|&s| g.mate[s as usize]).collect();
    let build = |order: [usize; 4]| -> ClosedGraph {
        // leg `order[k]` is placed at slot `k`
        let mut mate = g.mate.clone();
        let mut slot_of = [0u32; 4];
        for (k, &leg) in order.iter().enumerate() {
            slot_of[leg] = slots[k];
        }
        for leg in 0..4 {
            let s = slot_of[leg];
            let p = ext[leg];
            match slots.iter().position(|&x| x == p) {
                Some(other_leg) => mate[s as usize] = slot_of[other_leg],
                None => {
                    mate[s as usize] = p;
                    mate[p as usize] = s;
                }
            }
        }
        ClosedGraph::new(mate)
    };
    // legs: 0 = a, 1 = b, 2 = c, 3 = d
    Some([
        build([0, 1, 2, 3]),
        build([1, 2, 0, 3]),
        build([2, 0, 1, 3]),
    ])
}

/// Reduction of every connected graph of one degree to catalog generators.
#[derive(Debug, Clone)]
pub struct ReductionTable {
    pub degree: usize,
    values: HashMap<Code, Option<GraphVector>>,
    /// Free classes not covered by the catalog (empty when the catalog spans).
    pub extra: Vec<Code>,
    pub relation_count: usize,
    pub rank: usize,
    /// No IHX combination relates the catalog generators to each other.
    pub generators_independent: bool,
}

impl ReductionTable {
    pub fn build(degree: usize, canon: &mut Canonicalizer) -> ReductionTable {
        assert!(degree >= 1);
        let gens = generators_of_degree(degree);
        let seed = Diagram::necklace(degree as u32);
        let mut seen: HashMap<Code, Option<i8>> = HashMap::new();
        let mut order: Vec<Code> = Vec::new();
        let mut queue = VecDeque::new();
        let s = canon.canon(&seed);
        seen.insert(s.code.clone(), s.sign);
        order.push(s.code.clone());
        queue.push_back(s.code);
        let mut relations: Vec<Vec<(Code, i8)>> = Vec::new();
        while let Some(code) = queue.pop_front() {
            let rep = Canon {
                code: code.clone(),
                sign: Some(1),
            }
            .graph();
            for du in 0..rep.mate.len() as u32 {
                let Some(terms) = ihx_terms(&rep, du) else {
                    continue;
                };
                let mut row = Vec::new();
                for t in terms.iter() {
                    let c = canon.canon(t);
                    if !seen.contains_key(&c.code) {
                        seen.insert(c.code.clone(), c.sign);
                        order.push(c.code.clone());
                        queue.push_back(c.code.clone());
                    }
                    if let Some(sg) = c.sign {
                        row.push((c.code, sg));
                    }
                }
                if !row.is_empty() {
                    relations.push(row);
                }
            }
        }

        // columns: non-catalog classes first, then catalog generators
        let mut gen_cols: Vec<(Code, i8, Generator)> = Vec::new();
        for &g in &gens {
            let c = canon.canon(&catalog_graph(g).expect("catalog graph"));
            if let Some(sg) = c.sign {
                gen_cols.push((c.code, sg, g));
            }
        }
        let mut cols: Vec<Code> = order
            .iter()
            .filter(|c| seen[*c].is_some() && !gen_cols.iter().any(|(gc, _, _)| gc == *c))
            .cloned()
            .collect();
        cols.sort();
        cols.extend(gen_cols.iter().map(|(c, _, _)| c.clone()));
        let index: HashMap<&Code, usize> = cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let ncols = cols.len();

        let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
        for rel in &relations {
            let mut r = BTreeMap::new();
            for (c, sg) in rel {
                let e = r.entry(index[c]).or_insert_with(Rational::zero);
                *e += Rational::from_integer((*sg as i64).into());
            }
            r.retain(|_, v: &mut Rational| !v.is_zero());
            if !r.is_empty() {
                rows.push(r);
            }
        }
        let relation_count = rows.len();
        let pivots = rref(&mut rows, ncols);

        // value of each column in terms of generator symbols
        let mut col_value: Vec<Option<GraphVector>> = vec![None; ncols];
        let mut extra = Vec::new();
        let pivot_cols: HashMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        for (j, c) in cols.iter().enumerate() {
            if pivot_cols.contains_key(&j) {
                continue;
            }
            match gen_cols.iter().find(|(gc, _, _)| gc == c) {
                // representative = sign * generator graph
                Some((_, sg, g)) => {
                    col_value[j] = Some(
                        GraphVector::generator(*g)
                            .scale(&Rational::from_integer((*sg as i64).into())),
                    )
                }
                None => extra.push(c.clone()),
            }
        }
        for (&pc, &r) in &pivot_cols {
            let mut v = GraphVector::zero();
            let mut ok = true;
            for (&j, a) in &rows[r] {
                if j == pc {
                    continue;
                }
                match &col_value[j] {
                    Some(x) => v = &v + &x.scale(&-a.clone()),
                    None => ok = false,
                }
            }
            col_value[pc] = ok.then_some(v);
        }

        let first_gen = ncols - gen_cols.len();
        let generators_independent = pivots.iter().all(|&c| c < first_gen);

        let mut values = HashMap::new();
        for (c, sg) in &seen {
            let v = match sg {
                None => Some(GraphVector::zero()),
                Some(_) => col_value[index[c]].clone(),
            };
            values.insert(c.clone(), v);
        }
        ReductionTable {
            degree,
            values,
            extra,
            relation_count,
            rank: pivots.len(),
            generators_independent,
        }
    }

    /// The relations determine every class from the catalog, and the catalog
    /// generators stay independent.
    pub fn is_consistent(&self) -> bool {
        self.extra.is_empty() && self.generators_independent
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value of a canonical class (the representative with sign +1).
    pub fn lookup(&self, code: &Code) -> Result<GraphVector> {
        match self.values.get(code) {
            Some(Some(v)) => Ok(v.clone()),
            _ => Err(Error::UnreducibleGraph(
                Canon {
                    code: code.clone(),
                    sign: Some(1),
                }
                .graph()
                .to_string(),
            )),
        }
    }

    pub fn codes(&self) -> impl Iterator<Item = &Code> {
        self.values.keys()
    }
}

/// Reduced row echelon form in place; returns the pivot column of each row.
fn rref(rows: &mut Vec<BTreeMap<usize, Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut done = 0;
    for col in 0..ncols {
        let Some(p) = (done..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        rows.swap(done, p);
        let inv = Rational::one() / rows[done][&col].clone();
        for v in rows[done].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[done].clone();
        for r in 0..rows.len() {
            if r == done {
                continue;
            }
            let Some(f) = rows[r].get(&col).cloned() else {
                continue;
            };
            for (&j, a) in &pivot_row {
                let e = rows[r].entry(j).or_insert_with(Rational::zero);
                *e -= &f * a;
                if e.is_zero() {
                    rows[r].remove(&j);
                }
            }
        }
        pivots.push(col);
        done += 1;
    }
    rows.truncate(done);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ihx_on_theta_edge() {
        let g = Diagram::necklace(1);
        let terms = ihx_terms(&g, 0).unwrap();
        assert_eq!(terms[0], g);
        for t in &terms {
            assert_eq!(t.vertex_count(), 2);
        }
    }

    #[test]
    fn degree_one_and_two() {
        let mut c = Canonicalizer::new();
        let t1 = ReductionTable::build(1, &mut c);
        assert!(t1.extra.is_empty());
        let t2 = ReductionTable::build(2, &mut c);
        assert!(t2.extra.is_empty());
    }
}
