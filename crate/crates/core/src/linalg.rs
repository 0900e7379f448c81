//! Exact linear algebra over the rationals by fraction-free (Bareiss)
//! elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::common_denominator;
use crate::error::{Error, Result};

/// Determinant of a square integer matrix.
pub fn determinant_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// A solution; free variables are set to zero.
    pub x: Vec<BigRational>,
    /// `rank(A) == number of columns`.
    pub unique: bool,
    pub rank: usize,
}

/// Solves `A x = b` exactly.
///
/// `A` must have at least as many rows as columns. An inconsistent system
/// reports the (original) index of a row whose residual cannot vanish.
pub fn solve_exact_linear(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<LinearSolution> {
    let rows = a.len();
    if rows != b.len() {
        return Err(Error::Input(format!(
            "matrix has {rows} rows but right-hand side has {}",
            b.len()
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != cols) {
        return Err(Error::Input("ragged matrix".into()));
    }
    if rows < cols {
        return Err(Error::Input(format!(
            "need at least as many rows as columns ({rows} < {cols})"
        )));
    }

    // integer augmented matrix, one denominator cleared per row
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let den = common_denominator(row.iter().chain(std::iter::once(rhs)));
            let den = BigRational::from_integer(den);
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|v| (v * &den).to_integer())
                .collect()
        })
        .collect();
    let mut origin: Vec<usize> = (0..rows).collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        origin.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..=cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let rank = r;
    if let Some(i) = (rank..rows).find(|&i| !m[i][cols].is_zero()) {
        return Err(Error::NoSolution { row: origin[i] });
    }

    let mut x = vec![BigRational::zero(); cols];
    for (k, &c) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::from_integer(m[k][cols].clone());
        for &c2 in &pivots[k + 1..] {
            if !m[k][c2].is_zero() {
                acc -= BigRational::from_integer(m[k][c2].clone()) * &x[c2];
            }
        }
        x[c] = acc / BigRational::from_integer(m[k][c].clone());
    }
    Ok(LinearSolution {
        x,
        unique: rank == cols,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    fn int_matrix(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
        v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let a = int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = vec![rat(3), rat_frac(-1, 2), rat(7)];
        let s = solve_exact_linear(&a, &b).unwrap();
        assert!(s.unique);
        assert_eq!(s.x, b);
    }

    #[test]
    fn duplicated_rows_are_not_unique() {
        let a = int_matrix(&[&[1, 2], &[1, 2], &[2, 4]]);
        let b = vec![rat(3), rat(3), rat(6)];
        let s = solve_exact_linear(&a, &b).unwrap();
        assert!(!s.unique);
        assert_eq!(s.rank, 1);
        assert_eq!(&s.x[0] + rat(2) * &s.x[1], rat(3));
    }

    #[test]
    fn inconsistent_system_reports_row() {
        let a = int_matrix(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = vec![rat(2), rat(0), rat(5)];
        match solve_exact_linear(&a, &b) {
            Err(Error::NoSolution { row }) => assert_eq!(row, 2),
            other => panic!("expected NoSolution, got {other:?}"),
        }
    }

    #[test]
    fn wide_matrix_rejected() {
        let a = int_matrix(&[&[1, 1, 1]]);
        assert!(solve_exact_linear(&a, &[rat(1)]).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(2)],
        ];
        assert_eq!(determinant_bareiss(m), BigInt::from(4));
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(determinant_bareiss(m), BigInt::from(-1));
    }
}
