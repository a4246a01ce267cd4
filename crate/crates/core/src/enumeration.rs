//! Exhaustive short-vector enumeration (Fincke-Pohst) in exact arithmetic.
//!
//! This works purely from the Gram matrix and knows nothing about the group
//! ring parametrization of minimal vectors, so it serves as an independent
//! check on it.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeDescription;
use crate::linalg::{self, RatMatrix};
use crate::rational::{self, Q};

/// All nonzero coefficient vectors `x` with `x^T G x <= bound`, in
/// lexicographic order.
pub fn short_coefficient_vectors(gram: &[Vec<i64>], bound: &Q) -> Result<Vec<Vec<i64>>> {
    if !bound.is_positive() {
        return Err(Error::InvalidArgument("enumeration bound must be positive".into()));
    }
    let gq: RatMatrix = gram
        .iter()
        .map(|r| r.iter().map(|&x| rational::q(x)).collect())
        .collect();
    let q = linalg::quadratic_decomposition(&gq)
        .ok_or_else(|| Error::InvalidArgument("Gram matrix is not positive definite".into()))?;
    let n = gram.len();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n > 0 {
        descend(&q, n - 1, bound.clone(), &mut x, &mut out);
    }
    out.sort();
    Ok(out)
}

fn descend(q: &RatMatrix, i: usize, remaining: Q, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let n = x.len();
    let mut center = Q::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            center -= &q[i][j] * rational::q(x[j]);
        }
    }
    let radius = &remaining / &q[i][i];
    let Some((lo, hi)) = integer_window(&center, &radius) else {
        return;
    };
    for xi in lo..=hi {
        let d = rational::q(xi) - &center;
        let rest = &remaining - &q[i][i] * &d * &d;
        x[i] = xi;
        if i == 0 {
            if x.iter().any(|&c| c != 0) {
                out.push(x.clone());
            }
        } else {
            descend(q, i - 1, rest, x, out);
        }
    }
    x[i] = 0;
}

/// Integers `t` with `(t - c)^2 <= r`, as an inclusive range.
fn integer_window(c: &Q, r: &Q) -> Option<(i64, i64)> {
    if r.is_negative() {
        return None;
    }
    let fits = |t: i64| {
        let d = rational::q(t) - c;
        &d * &d <= *r
    };
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let nearest = (c + &half).floor().to_integer().to_i64()?;
    if !fits(nearest) {
        return None;
    }
    let span = r.to_f64().unwrap_or(0.0).sqrt().ceil() as i64 + 1;
    let cf = c.to_f64().unwrap_or(0.0);
    let mut hi = nearest.max(cf.ceil() as i64 + span);
    while !fits(hi) {
        hi -= 1;
    }
    while fits(hi + 1) {
        hi += 1;
    }
    let mut lo = nearest.min(cf.floor() as i64 - span);
    while !fits(lo) {
        lo += 1;
    }
    while fits(lo - 1) {
        lo -= 1;
    }
    Some((lo, hi))
}

/// All nonzero lattice vectors of squared norm at most `bound`, as
/// coefficient vectors in `ZA`, sorted.
pub fn short_vector_oracle(lattice: &LatticeDescription, bound: &Q) -> Result<Vec<Vec<i64>>> {
    let basis = lattice.basis_rows();
    let dim = lattice.group().order();
    let mut out: Vec<Vec<i64>> = short_coefficient_vectors(lattice.gram(), bound)?
        .into_iter()
        .map(|c| {
            let mut v = vec![0i64; dim];
            for (ci, b) in c.iter().zip(&basis) {
                if *ci != 0 {
                    for (vk, bk) in v.iter_mut().zip(b) {
                        *vk += ci * bk;
                    }
                }
            }
            v
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Squared minimum and all vectors attaining it.
pub fn minimum(lattice: &LatticeDescription) -> Result<(i64, Vec<Vec<i64>>)> {
    let bound = (0..lattice.rank())
        .map(|i| lattice.gram()[i][i])
        .min()
        .ok_or(Error::EmptyLattice)?;
    let all = short_vector_oracle(lattice, &rational::q(bound))?;
    let norm = |v: &Vec<i64>| v.iter().map(|x| x * x).sum::<i64>();
    let min = all.iter().map(norm).min().ok_or(Error::EmptyLattice)?;
    Ok((min, all.into_iter().filter(|v| norm(v) == min).collect()))
}
