//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Solves `a · w = b` for an `m × n` system. Returns a solution if the
/// system is consistent; free variables are set to zero.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col];
                for j in col..=n {
                    let d = f * rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut w = vec![Q::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        w[col] = rows[i][n];
    }
    Some(w)
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Q>]) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..m {
            if !rows[i][col].is_zero() {
                let f = rows[i][col] / rows[r][col];
                for j in col..n {
                    let d = f * rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}
