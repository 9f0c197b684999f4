//! Small dense linear systems over the rationals.

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Solve `a x = b` for square `a`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::pre("system must be square"));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, r)| row.iter().cloned().chain([r.clone()]).collect())
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(col, p);
        let inv = Rational::one() / m[col][col].clone();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn solves_and_detects_singular() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(
            solve(&a, &[int(3), int(5)]).unwrap(),
            vec![crate::exact::frac(4, 5), crate::exact::frac(7, 5)]
        );
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(&s, &[int(1), int(1)]), Err(Error::SingularSystem));
    }
}
