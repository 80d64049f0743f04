//! Exact dense linear algebra.

use num::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = F::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn to_field<F: Field>(m: &[Vec<i64>]) -> Vec<Vec<F>> {
    m.iter().map(|row| row.iter().map(|&v| F::from_i64(v)).collect()).collect()
}

/// Rank over an exact field.
pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Rank of an integer matrix.
pub fn rank_int(m: &[Vec<i64>]) -> usize {
    rank::<crate::Rational>(&to_field(m))
}

/// Rows forming a basis of the row space, chosen greedily top to bottom.
pub fn independent_rows(m: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..m.len() {
        let mut trial: Vec<Vec<i64>> = chosen.iter().map(|&j| m[j].clone()).collect();
        trial.push(m[i].clone());
        if rank_int(&trial) == trial.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Determinant by fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Adjugate of a square integer matrix, so that `adj · M = det(M) · I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let cof = det(&minor);
            // adj[j][i] = (-1)^{i+j} M_ij
            out[j][i] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether every maximal minor lies in `{-1, 0, 1}`.
pub fn is_unimodular(m: &[Vec<i64>]) -> bool {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let k = rows.min(cols);
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            if det(&minor).abs() > BigInt::one() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, 1], vec![1, 3]]), BigInt::from(5));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), BigInt::zero());
        assert_eq!(det(&[vec![0, 2, 1], vec![3, 0, 1], vec![1, 1, 0]]), BigInt::from(5));
    }

    #[test]
    fn adjugate_identity() {
        let m = vec![vec![2, -1, 0], vec![1, 3, 2], vec![0, 1, 4]];
        let adj = adjugate(&m);
        let d = det(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|k| &adj[i][k] * BigInt::from(m[k][j])).sum();
                assert_eq!(s, if i == j { d.clone() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_int(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank_int(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank::<Rational>(&[]), 0);
        assert_eq!(rank::<num::rational::Ratio<i64>>(&to_field(&[vec![1, 1, 0], vec![0, 1, 1]])), 2);
        assert_eq!(independent_rows(&[vec![1, 1], vec![2, 2], vec![0, 1]]), vec![0, 2]);
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&[vec![1, 0], vec![0, 1]]));
        assert!(!is_unimodular(&[vec![2, 0], vec![0, 1]]));
        // incidence matrices of directed graphs are totally unimodular
        assert!(is_unimodular(&[vec![1, 1, 0], vec![-1, 0, 1], vec![0, -1, -1]]));
    }
}
