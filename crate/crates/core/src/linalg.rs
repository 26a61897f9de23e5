//! Small dense exact linear algebra: determinants, Sylvester's criterion,
//! consistent linear systems and integral column reduction.
//!
//! Matrices here are at most a dozen rows, so plain Gaussian elimination over
//! the rationals is both fast and exact.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn to_rational_matrix(m: &[Vec<BigInt>]) -> Matrix {
    m.iter()
        .map(|row| row.iter().cloned().map(Rational::from_integer).collect())
        .collect()
}

/// Determinant by Gaussian elimination. The empty matrix has determinant 1.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Determinants of the leading principal submatrices of orders `1..=n`.
pub fn leading_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    (1..=m.len())
        .map(|k| {
            let sub: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion for negative definiteness: the k-th leading minor
/// has sign `(-1)^k`. The empty matrix is negative definite.
pub fn is_negative_definite(m: &[Vec<Rational>]) -> bool {
    leading_minors(m).iter().enumerate().all(|(i, minor)| {
        let k = i + 1;
        if k % 2 == 1 {
            minor.is_negative()
        } else {
            minor.is_positive()
        }
    })
}

/// Solves `m · x = rhs` for a square nonsingular `m`.
pub fn solve_square(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut a: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let pivot = a[col][col].clone();
        for c in col..=n {
            a[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Finds coefficients `y` with `Σ y_j · columns[j] = target`, where the
/// columns are linearly independent. Returns `None` when `target` is not in
/// their span or the columns are dependent.
pub fn solve_in_span(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let n = target.len();
    if columns.iter().any(|c| c.len() != n) {
        return None;
    }
    // rows of the augmented system [C | target]
    let mut a: Matrix = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for col in 0..k {
        let p = (pivot_row..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, pivot_row);
        let pivot = a[pivot_row][col].clone();
        for c in col..=k {
            a[pivot_row][c] /= &pivot;
        }
        for r in 0..n {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=k {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] -= delta;
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][k].clone()).collect())
}

/// Integral column reduction. Returns a basis (as columns) of the lattice
/// spanned by `columns`, in echelon form: row by row, the leading entries
/// are positive and the columns above them are untouched.
///
/// Columns that already form an echelon basis (for instance unit vectors in
/// order, possibly interleaved with zero columns) come back unchanged and in
/// the same order.
pub fn column_echelon(mut columns: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let rows = columns.first().map_or(0, Vec::len);
    let mut pivot = 0;
    for row in 0..rows {
        loop {
            let nonzero: Vec<usize> = (pivot..columns.len())
                .filter(|&j| !columns[j][row].is_zero())
                .collect();
            match nonzero.as_slice() {
                [] => break,
                [j] => {
                    columns.swap(pivot, *j);
                    if columns[pivot][row].is_negative() {
                        for x in columns[pivot].iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    pivot += 1;
                    break;
                }
                _ => {
                    let jmin = *nonzero
                        .iter()
                        .min_by_key(|&&j| columns[j][row].abs())
                        .unwrap();
                    let base = columns[jmin].clone();
                    for &j in &nonzero {
                        if j == jmin {
                            continue;
                        }
                        let q = columns[j][row].div_floor(&base[row]);
                        for (x, b) in columns[j].iter_mut().zip(&base) {
                            *x -= &q * b;
                        }
                    }
                }
            }
        }
    }
    columns.truncate(pivot);
    columns
}
