//! Exact linear algebra over `Z` and `Q`: fraction-free elimination (rank,
//! determinant), rational solves, the Fincke-Pohst quadratic-form
//! decomposition and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Q>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
///
/// Stops early once `stop_at` independent rows have been found.
pub fn rank_fraction_free(mut rows: IntMatrix, stop_at: Option<usize>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let limit = stop_at.unwrap_or(usize::MAX).min(ncols).min(rows.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank >= limit {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let mut v = &row[j] * pivot;
                if !lead.is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix modulo the prime `2^61 - 1`.
///
/// Never exceeds the rank over `Q`, so a modular rank equal to an a priori
/// upper bound settles the rational rank exactly.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: u64 = (1 << 61) - 1;
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(P as i64) as u64).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = powmod(m[rank][col], P - 2);
        for v in m[rank].iter_mut() {
            *v = mulmod(*v, inv);
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(pivot_row).skip(col) {
                *x = (*x + P - mulmod(f, y)) % P;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `a x = b` for square nonsingular `a`; `None` when singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Decomposition `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2` of a
/// symmetric matrix. Returns `None` unless the matrix is positive definite.
pub fn quadratic_decomposition(gram: &[Vec<Q>]) -> Option<RatMatrix> {
    let n = gram.len();
    let mut q: RatMatrix = gram.to_vec();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[k][i] * &q[i][l];
                q[k][l] -= d;
            }
        }
    }
    Some(q)
}

pub fn is_positive_definite(gram: &[Vec<Q>]) -> bool {
    quadratic_decomposition(gram).is_some()
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: IntMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: entry of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        let (top, rest) = a.split_at_mut(t + 1);
        let pivot_row = &top[t];
        for row in rest.iter_mut() {
            if row[t].is_zero() {
                continue;
            }
            let f = row[t].div_floor(&pivot_row[t]);
            for (x, p) in row.iter_mut().zip(pivot_row).skip(t) {
                *x -= &f * p;
            }
            dirty |= !row[t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut().skip(t) {
                let d = &f * &row[t];
                row[j] -= d;
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // the pivot must divide the whole remaining block
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
        if let Some(i) = offender {
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in top[t].iter_mut().zip(&rest[0]).skip(t) {
                *x += y;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
