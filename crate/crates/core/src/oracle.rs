//! Brute-force description of the norm-4 vectors of `L(A)`.
//!
//! `x + y - r - s` with `x, y, r, s` pairwise distinct and `xy = rs` lies in
//! `Ker(psi) ∩ ΔA` and has norm 4. This enumeration does not use `Omega(A)`.

use std::collections::BTreeSet;

use crate::group::AbelianGroup;

/// All vectors `x + y - r - s` over pairwise distinct `x, y, r, s` with
/// `xy = rs`, as sorted coefficient vectors.
pub fn quadruple_vectors(group: &AbelianGroup) -> BTreeSet<Vec<i64>> {
    let n = group.order();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let xy = group.mul_idx(x, y);
            for r in 0..n {
                let s = group.mul_idx(xy, group.inv_idx(r));
                if [x, y].contains(&r) || [x, y, r].contains(&s) {
                    continue;
                }
                let mut v = vec![0i64; n];
                v[x] += 1;
                v[y] += 1;
                v[r] -= 1;
                v[s] -= 1;
                out.insert(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{kissing_count, minimal_vectors};

    #[test]
    fn agrees_with_parametrization() {
        for spec in ["C4", "C5", "C6", "C2xC2", "C4xC2"] {
            let a: AbelianGroup = spec.parse().unwrap();
            let oracle = quadruple_vectors(&a);
            let param: BTreeSet<Vec<i64>> = minimal_vectors(&a).unwrap().into_iter().map(|m| m.coeffs).collect();
            assert_eq!(oracle, param, "{spec}");
            assert_eq!(oracle.len() as i64, kissing_count(&a), "{spec}");
        }
        let c4: AbelianGroup = "C4".parse().unwrap();
        assert_eq!(quadruple_vectors(&c4).len(), 4);
        let c6: AbelianGroup = "C6".parse().unwrap();
        assert_eq!(quadruple_vectors(&c6).len(), 24);
    }

    #[test]
    fn empty_below_four() {
        for spec in ["C2", "C3"] {
            assert!(quadruple_vectors(&spec.parse().unwrap()).is_empty());
        }
    }
}
