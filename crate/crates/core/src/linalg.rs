//! Exact rank and linear solves over the scalar field.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clifford::SpinorPoly;
use crate::poly::MultiIndex;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("element is not homogeneous of degree {0}")]
    WrongDegree(usize),
    #[error("rows have inconsistent lengths")]
    Ragged,
}

/// Coordinates of `P_n ⊗ V` in (reverse-lex monomial) × (spinor index) order.
#[derive(Clone, Debug)]
pub struct Coordinates {
    degree: usize,
    size: usize,
    index: BTreeMap<MultiIndex, usize>,
}

impl Coordinates {
    pub fn new(nvars: usize, degree: usize, size: usize) -> Self {
        let index = MultiIndex::all_of_degree(nvars, degree).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        Coordinates { degree, size, index }
    }

    /// `dim P_n · dim V`
    pub fn len(&self) -> usize {
        self.index.len() * self.size
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectorize(&self, f: &SpinorPoly) -> Result<Vec<Scalar>, LinalgError> {
        let mut out = vec![Scalar::zero(); self.len()];
        for (s, p) in f.components().iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.index.get(m).ok_or(LinalgError::WrongDegree(self.degree))?;
                out[i * self.size + s] = c.clone();
            }
        }
        Ok(out)
    }
}

pub fn vectorize(f: &SpinorPoly, n: usize) -> Result<Vec<Scalar>, LinalgError> {
    Coordinates::new(f.nvars(), n, f.size()).vectorize(f)
}

fn check_rows(rows: &[Vec<Scalar>]) -> Result<usize, LinalgError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(LinalgError::Ragged);
    }
    Ok(width)
}

/// Rank by fraction-free (Bareiss) elimination, pivoting on the first nonzero entry.
pub fn rank(rows: &[Vec<Scalar>]) -> Result<usize, LinalgError> {
    let width = check_rows(rows)?;
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut prev = Scalar::one();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in col + 1..width {
                let v = &(&m[r][col] * &m[i][j]) - &(&m[i][col] * &m[r][j]);
                m[i][j] = &v / &prev;
            }
            m[i][col] = Scalar::zero();
        }
        prev = m[r][col].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// The rows are independent and the combination is unique.
    Unique(Vec<Scalar>),
    /// One of several combinations (free coefficients set to zero).
    Particular(Vec<Scalar>),
    NoSolution,
}

/// Finds `c` with `Σ_i c_i rows[i] = target`.
pub fn solve(rows: &[Vec<Scalar>], target: &[Scalar]) -> Result<Solution, LinalgError> {
    let width = check_rows(rows)?;
    if !rows.is_empty() && target.len() != width {
        return Err(LinalgError::Ragged);
    }
    let unknowns = rows.len();
    // augmented system with one equation per coordinate
    let mut a: Vec<Vec<Scalar>> = (0..target.len())
        .map(|e| {
            let mut row: Vec<Scalar> = rows.iter().map(|r| r[e].clone()).collect();
            row.push(target[e].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].inv().expect("pivot is nonzero");
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[r][col..=unknowns].to_vec();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..=unknowns].iter_mut().zip(&pivot) {
                    *x -= &(p * &f);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return Ok(Solution::NoSolution);
    }
    let mut c = vec![Scalar::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        c[col] = a[i][unknowns].clone();
    }
    Ok(if pivots.len() == unknowns { Solution::Unique(c) } else { Solution::Particular(c) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&a| Scalar::from_int(a)).collect()
    }

    /// Plain Gauss elimination pivoting on the last nonzero entry of each column.
    fn oracle_rank(rows: &[Vec<Scalar>]) -> usize {
        let mut m = rows.to_vec();
        let width = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for col in (0..width).rev() {
            let Some(p) = (r..m.len()).rev().find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][col].inv().unwrap();
            let pivot = m[r].clone();
            for row in m.iter_mut().skip(r + 1) {
                let f = &row[col] * &inv;
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &(p * &f);
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn vectorize_examples() {
        let x1 = Polynomial::var(2, 0);
        let f = SpinorPoly::from_components(vec![x1, Polynomial::zero(2)]);
        // degree-1 monomials in order x2, x1
        assert_eq!(vectorize(&f, 1).unwrap(), ints(&[0, 0, 1, 0]));
        assert_eq!(vectorize(&SpinorPoly::zero(2, 2), 1).unwrap(), ints(&[0, 0, 0, 0]));
        assert_eq!(vectorize(&f, 2), Err(LinalgError::WrongDegree(2)));
    }

    #[test]
    fn rank_examples() {
        let id = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])];
        assert_eq!(rank(&id).unwrap(), 3);
        let dup = vec![ints(&[1, 2, 3]), ints(&[1, 2, 3]), ints(&[0, 1, 1])];
        assert_eq!(rank(&dup).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
        let irr = vec![
            vec![Scalar::sqrt_of(2).unwrap(), Scalar::from_int(1)],
            vec![Scalar::from_int(2), Scalar::sqrt_of(2).unwrap()],
        ];
        assert_eq!(rank(&irr).unwrap(), 1);
    }

    #[test]
    fn solve_examples() {
        let rows = vec![ints(&[1, 0, 1]), ints(&[0, 1, 1])];
        assert_eq!(solve(&rows, &ints(&[2, 3, 5])).unwrap(), Solution::Unique(ints(&[2, 3])));
        assert_eq!(solve(&rows, &ints(&[2, 3, 4])).unwrap(), Solution::NoSolution);
        let dep = vec![ints(&[1, 1]), ints(&[2, 2])];
        assert_eq!(solve(&dep, &ints(&[3, 3])).unwrap(), Solution::Particular(ints(&[3, 0])));
    }

    proptest! {
        #[test]
        fn rank_agrees_with_oracle(entries in proptest::collection::vec(-2i64..3, 20), scale in 1i64..5, perm in 0usize..4) {
            let mut rows: Vec<Vec<Scalar>> = entries.chunks(5).map(ints).collect();
            let r = rank(&rows).unwrap();
            prop_assert_eq!(r, oracle_rank(&rows));
            rows.rotate_left(perm);
            rows[0] = rows[0].iter().map(|v| v * &Scalar::from_int(scale)).collect();
            prop_assert_eq!(rank(&rows).unwrap(), r);
        }

        #[test]
        fn solve_recovers_combination(entries in proptest::collection::vec(-3i64..4, 12), coeffs in proptest::collection::vec(-3i64..4, 3)) {
            let rows: Vec<Vec<Scalar>> = entries.chunks(4).map(ints).collect();
            let target: Vec<Scalar> = (0..4)
                .map(|j| rows.iter().zip(&coeffs).map(|(r, &c)| &r[j] * &Scalar::from_int(c)).sum())
                .collect();
            match solve(&rows, &target).unwrap() {
                Solution::Unique(c) | Solution::Particular(c) => {
                    let back: Vec<Scalar> = (0..4).map(|j| rows.iter().zip(&c).map(|(r, c)| &r[j] * c).sum()).collect();
                    prop_assert_eq!(back, target);
                }
                Solution::NoSolution => prop_assert!(false, "target is in the span"),
            }
        }
    }
}
