//! Independent check of the characteristic-class expansions.
//!
//! A multiplicative class `prod_i f(x_i)` has degree-`d` part
//! `sum_{lambda |- d} (prod_j f_{lambda_j}) m_lambda`. Converting monomial
//! symmetric functions to elementary ones (via counts of 0-1 matrices) and
//! then setting the odd elementary functions to zero gives the expansion in
//! even Chern classes without using Newton's identities.

use std::collections::HashMap;

use fujiki_core::exact::{factorial_q, frac, int};
use fujiki_core::genus::{chern_character, sqrt_todd_component, todd_component, ChernPolynomial};
use fujiki_core::{ChernMonomial, Rational};
use num_traits::{One, Zero};

fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
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
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Number of 0-1 matrices with the given row and column sums.
fn zero_one_count(rows: &[usize], cols: &[usize]) -> u64 {
    fn rec(
        rows: &[usize],
        cols: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), u64>,
    ) -> u64 {
        let Some((&r, rest)) = rows.split_first() else {
            return cols.iter().all(|&c| c == 0) as u64;
        };
        let key = (rows.len(), cols.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let n = cols.len();
        let mut total = 0;
        // choose r distinct columns with positive capacity
        fn choose(
            start: usize,
            left: usize,
            n: usize,
            cols: &mut Vec<usize>,
            rest: &[usize],
            memo: &mut HashMap<(usize, Vec<usize>), u64>,
            total: &mut u64,
        ) {
            if left == 0 {
                *total += rec(rest, cols, memo);
                return;
            }
            for j in start..n {
                if cols[j] > 0 {
                    cols[j] -= 1;
                    choose(j + 1, left - 1, n, cols, rest, memo, total);
                    cols[j] += 1;
                }
            }
        }
        choose(0, r, n, cols, rest, memo, &mut total);
        memo.insert(key, total);
        total
    }
    rec(rows, &mut cols.to_vec(), &mut HashMap::new())
}

/// Solve `x M = g` where `M[mu][lambda]` expresses `e_mu` in monomials.
fn monomial_to_elementary(d: usize, g: &[Rational]) -> Vec<Rational> {
    let parts = partitions(d);
    let k = parts.len();
    // augmented system: for each lambda, sum_mu x_mu M[mu][lambda] = g_lambda
    let mut a: Vec<Vec<Rational>> = (0..k)
        .map(|l| {
            let mut row: Vec<Rational> = (0..k)
                .map(|m| int(zero_one_count(&parts[m], &parts[l]) as i64))
                .collect();
            row.push(g[l].clone());
            row
        })
        .collect();
    for col in 0..k {
        let p = (col..k)
            .find(|&r| !a[r][col].is_zero())
            .expect("invertible");
        a.swap(col, p);
        let inv = Rational::one() / a[col][col].clone();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=k {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[k].clone()).collect()
}

/// Degree-`d` part of `sum_lambda g_lambda m_lambda`, rewritten in even Chern classes.
fn to_chern(d: usize, g: &[Rational]) -> ChernPolynomial {
    let parts = partitions(d);
    let x = monomial_to_elementary(d, g);
    let mut terms = Vec::new();
    for (mu, c) in parts.iter().zip(x) {
        if mu.iter().any(|p| p % 2 == 1) {
            continue;
        }
        let m = mu.iter().fold(ChernMonomial::ONE, |acc, &p| {
            acc.mul(&ChernMonomial::c(p / 2))
        });
        terms.push((m, c));
    }
    ChernPolynomial::from_terms(d as u32, terms)
}

fn multiplicative(d: usize, f: &[Rational]) -> ChernPolynomial {
    let g: Vec<Rational> = partitions(d)
        .iter()
        .map(|l| l.iter().map(|&p| f[p].clone()).product())
        .collect();
    to_chern(d, &g)
}

fn series_inverse(f: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::one() / f[0].clone()];
    for m in 1..f.len() {
        let s: Rational = (1..=m).map(|i| &f[i] * &out[m - i]).sum();
        out.push(-s / f[0].clone());
    }
    out
}

fn series_sqrt(f: &[Rational]) -> Vec<Rational> {
    assert!(f[0].is_one());
    let mut s = vec![Rational::one()];
    for m in 1..f.len() {
        let cross: Rational = (1..m).map(|i| &s[i] * &s[m - i]).sum();
        s.push((&f[m] - cross) / int(2));
    }
    s
}

/// Coefficients of `x / (1 - e^{-x})` through `x^10`.
fn todd_series() -> Vec<Rational> {
    let g: Vec<Rational> = (0..=10u32)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            int(sign) / factorial_q(j + 1)
        })
        .collect();
    series_inverse(&g)
}

#[test]
fn todd_series_start() {
    let t = todd_series();
    assert_eq!(t[1], frac(1, 2));
    assert_eq!(t[2], frac(1, 12));
    assert_eq!(t[3], Rational::zero());
    assert_eq!(t[4], frac(-1, 720));
}

#[test]
fn todd_matches_multiplicative_expansion() {
    let t = todd_series();
    for k in 1..=5u32 {
        assert_eq!(
            todd_component(k).unwrap(),
            multiplicative(2 * k as usize, &t),
            "td_{}",
            2 * k
        );
    }
}

#[test]
fn sqrt_todd_matches_multiplicative_expansion() {
    let s = series_sqrt(&todd_series());
    for k in 1..=5u32 {
        assert_eq!(
            sqrt_todd_component(k).unwrap(),
            multiplicative(2 * k as usize, &s),
            "td^1/2_{}",
            2 * k
        );
    }
}

#[test]
fn chern_character_matches_power_sum_expansion() {
    for k in 1..=5u32 {
        let d = 2 * k as usize;
        let g: Vec<Rational> = partitions(d)
            .iter()
            .map(|l| {
                if l.len() == 1 {
                    Rational::one() / factorial_q(d as u32)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        assert_eq!(chern_character(k).unwrap(), to_chern(d, &g), "ch_{d}");
    }
}

#[test]
fn sqrt_todd_squares_to_todd() {
    for k in 0..=5u32 {
        let mut acc = ChernPolynomial::zero(2 * k);
        for i in 0..=k {
            let p = sqrt_todd_component(i)
                .unwrap()
                .mul(&sqrt_todd_component(k - i).unwrap())
                .unwrap();
            acc = acc.add(&p);
        }
        assert_eq!(acc, todd_component(k).unwrap(), "weight {}", 2 * k);
    }
}

#[test]
fn expansions_are_homogeneous() {
    for k in 1..=5u32 {
        for p in [
            chern_character(k),
            todd_component(k),
            sqrt_todd_component(k),
        ] {
            let p = p.unwrap();
            assert!(p.terms().all(|(m, _)| m.weight() == 2 * k));
        }
    }
}
