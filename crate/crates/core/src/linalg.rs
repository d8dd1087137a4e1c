//! Exact rank of integer matrices over the rationals.
//!
//! Integer row elimination: each step scales the target row by the pivot
//! and subtracts, then divides the row by the gcd of its entries. Pivots of
//! smallest magnitude are preferred, so boundary matrices (entries ±1)
//! rarely grow. On `i64` overflow the same elimination reruns on big
//! integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sparse column-oriented integer matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix {
            rows,
            cols: Vec::new(),
        }
    }

    pub fn push_col(&mut self, col: Vec<(usize, i64)>) {
        self.cols.push(col);
    }

    fn dense_rows(&self) -> Vec<Vec<i64>> {
        // transpose: columns of the matrix become rows of the eliminated
        // array; rank is unchanged
        self.cols
            .iter()
            .map(|c| {
                let mut row = vec![0i64; self.rows];
                for &(r, v) in c {
                    row[r] += v;
                }
                row
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols.is_empty() {
            return 0;
        }
        let rows = self.dense_rows();
        match rank_i64(rows.clone()) {
            Some(r) => r,
            None => rank_big(rows),
        }
    }
}

/// Rank of a dense integer matrix given as rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    match rank_i64(rows.to_vec()) {
        Some(r) => r,
        None => rank_big(rows.to_vec()),
    }
}

fn gcd_normalize(row: &mut [i64]) {
    let g = row.iter().fold(0i64, |g, &v| g.gcd(&v));
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

fn rank_i64(mut m: Vec<Vec<i64>>) -> Option<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..m.len())
            .filter(|&r| m[r][col] != 0)
            .min_by_key(|&r| m[r][col].unsigned_abs());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        let a = prow[col];
        for row in tail.iter_mut() {
            let b = row[col];
            if b == 0 {
                continue;
            }
            let g = a.gcd(&b);
            let (sa, sb) = (a / g, b / g);
            for k in col..ncols {
                let v = row[k].checked_mul(sa)?.checked_sub(prow[k].checked_mul(sb)?)?;
                row[k] = v;
            }
            gcd_normalize(row);
        }
        rank += 1;
    }
    Some(rank)
}

fn rank_big(rows: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        let a = prow[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let b = row[col].clone();
            let g = a.gcd(&b);
            let (sa, sb) = (&a / &g, &b / &g);
            for k in col..ncols {
                row[k] = &row[k] * &sa - &prow[k] * &sb;
            }
            let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            if g > BigInt::from(1) {
                for v in row.iter_mut() {
                    *v = &*v / &g;
                }
            }
        }
        rank += 1;
    }
    rank
}
