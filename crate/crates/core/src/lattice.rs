//! The lattices `(ΔA)^r` inside `ZA`, with explicit bases, Gram matrices and
//! the minimal vectors of `L(A) = (ΔA)^2`.
//!
//! `L(A)` is the kernel of `psi_A` on the augmentation ideal. Its nonzero
//! vectors have squared norm at least 4 once `|A| >= 4`, and the norm-4
//! vectors are exactly the translates `(a-1)(b-1)g` with `(a, b)` in
//! `Omega(A)`, each hit by four triples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::enumeration;
use crate::error::{Error, Result};
use crate::group::{parse_group_spec, AbelianGroup, GroupElement};
use crate::linalg::{self, RatMatrix};
use crate::rational::{self, Q};
use crate::ring::GroupRingElement;

/// A lattice in `ZA` given by an ordered basis and its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeDescription {
    group: AbelianGroup,
    power: u32,
    basis: Vec<GroupRingElement>,
    gram: Vec<Vec<i64>>,
}

impl LatticeDescription {
    /// Wraps an explicit basis, computing its Gram matrix and checking that
    /// it is positive definite.
    pub fn from_basis(group: &AbelianGroup, power: u32, basis: Vec<GroupRingElement>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let rows: Vec<Vec<i64>> = basis.iter().map(|b| b.to_ints()).collect::<Result<_>>()?;
        let gram = gram_of(&rows)?;
        let lattice = LatticeDescription {
            group: group.clone(),
            power,
            basis,
            gram,
        };
        if !linalg::is_positive_definite(&lattice.gram_q()) {
            return Err(Error::Consistency("basis vectors are linearly dependent".into()));
        }
        Ok(lattice)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupRingElement] {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|b| b.to_ints().expect("integral basis")).collect()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn gram_q(&self) -> RatMatrix {
        self.gram
            .iter()
            .map(|r| r.iter().map(|&x| rational::q(x)).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::det_int(&linalg::to_big(&self.gram))
    }

    /// Coordinates of `v` in this basis, if `v` lies in the rational span.
    pub fn coordinates(&self, v: &GroupRingElement) -> Result<Vec<Q>> {
        self.group.ensure_same(v.group())?;
        let rhs: Vec<Q> = self.basis.iter().map(|b| b.inner(v)).collect::<Result<_>>()?;
        let c = linalg::solve(&self.gram_q(), &rhs)
            .ok_or_else(|| Error::Consistency("singular Gram matrix".into()))?;
        let mut back = GroupRingElement::zero(&self.group);
        for (ci, b) in c.iter().zip(&self.basis) {
            back = &back + &b.scale(ci);
        }
        if back != *v {
            return Err(Error::NotMember);
        }
        Ok(c)
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            group: self.group.to_string(),
            power: self.power,
            basis: self.basis_rows(),
            gram: self.gram.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LatticeDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let group = parse_group_spec(&doc.group)?;
        let basis = doc
            .basis
            .iter()
            .map(|r| GroupRingElement::from_ints(&group, r))
            .collect::<Result<_>>()?;
        let lattice = LatticeDescription::from_basis(&group, doc.power, basis)?;
        if lattice.gram != doc.gram {
            return Err(Error::Format("gram does not match the basis".into()));
        }
        Ok(lattice)
    }

    /// Gram matrix as whitespace-separated rows, one per line.
    pub fn gram_text(&self) -> String {
        let mut out = String::new();
        for row in &self.gram {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Lattice export: `{group, power, basis: [[int]], gram: [[int]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub group: String,
    pub power: u32,
    pub basis: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
}

pub(crate) fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn gram_of(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|x| {
            rows.iter()
                .map(|y| {
                    x.iter()
                        .zip(y)
                        .try_fold(0i64, |acc, (a, b)| a.checked_mul(*b).and_then(|p| acc.checked_add(p)))
                        .ok_or(Error::Overflow)
                })
                .collect()
        })
        .collect()
}

/// Basis of `(ΔA)^r`.
///
/// * `r = 1`: `{a - 1 : a != 1}` in canonical order.
/// * `r = 2`: per cyclic factor `{(a_i-1)(a_i^k-1)}`, glued factor by factor
///   with the cross terms `(b-1)(c-1)`, `b` in the span of the earlier
///   factors and `c` in the new one.
/// * `r > 2`: cyclic groups only, `{(a-1)^{r-1}(a^k-1)}`.
pub fn canonical_basis(group: &AbelianGroup, power: u32) -> Result<LatticeDescription> {
    if group.is_trivial() {
        return Err(Error::EmptyLattice);
    }
    let basis = match power {
        0 => return Err(Error::InvalidArgument("lattice power must be at least 1".into())),
        1 => (1..group.order()).map(|a| GroupRingElement::delta(group, a)).collect(),
        2 => square_basis(group),
        r if group.is_cyclic() => craig_basis(group, r),
        r => {
            return Err(Error::Unsupported(format!(
                "(ΔA)^{r} bases are only constructed for cyclic groups, not {group}"
            )))
        }
    };
    LatticeDescription::from_basis(group, power, basis)
}

/// Shorthand for `canonical_basis(group, 2)`, the lattice `L(A)`.
pub fn lattice_of(group: &AbelianGroup) -> Result<LatticeDescription> {
    canonical_basis(group, 2)
}

/// Index pairs `(x, y)` such that the canonical basis of `L(A)` is
/// `[(x-1)(y-1)]` in this order.
pub fn square_basis_pairs(group: &AbelianGroup) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    // elements of the subgroup generated by the factors seen so far
    let mut span: Vec<usize> = vec![0];
    for i in 0..group.rank() {
        let a = group.factor_generator(i);
        let n = group.invariant_factors()[i] as i64;
        let cyclic: Vec<usize> = (0..n).map(|k| group.pow_idx(a, k)).collect();
        for &c in &cyclic[1..] {
            pairs.push((a, c));
        }
        for &b in span.iter().skip(1) {
            for &c in &cyclic[1..] {
                pairs.push((b, c));
            }
        }
        let mut next = Vec::with_capacity(span.len() * cyclic.len());
        for &b in &span {
            for &c in &cyclic {
                next.push(group.mul_idx(b, c));
            }
        }
        next.sort_unstable();
        span = next;
    }
    pairs
}

fn square_basis(group: &AbelianGroup) -> Vec<GroupRingElement> {
    square_basis_pairs(group)
        .into_iter()
        .map(|(x, y)| GroupRingElement::m(group, x, y))
        .collect()
}

fn craig_basis(group: &AbelianGroup, power: u32) -> Vec<GroupRingElement> {
    let a = if group.order() > 1 { group.factor_generator(0) } else { 0 };
    let d = GroupRingElement::delta(group, a);
    let mut head = GroupRingElement::one(group);
    for _ in 1..power {
        head = &head * &d;
    }
    (1..group.order() as i64)
        .map(|k| &head * &GroupRingElement::delta(group, group.pow_idx(a, k)))
        .collect()
}

/// Whether an integral element lies in `L(A) = Ker(psi_A) ∩ ΔA`.
pub fn membership(x: &GroupRingElement) -> bool {
    x.is_integral() && x.augmentation().is_zero() && x.psi_idx() == Ok(0)
}

/// A pair `(a, b)` with `a != 1 != b != a^{±1}`, stored as canonical indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OmegaPair {
    pub a: usize,
    pub b: usize,
}

impl OmegaPair {
    pub fn elements(&self, group: &AbelianGroup) -> (GroupElement, GroupElement) {
        (group.element(self.a), group.element(self.b))
    }
}

pub fn is_omega_pair(group: &AbelianGroup, a: usize, b: usize) -> bool {
    a != 0 && b != 0 && b != a && b != group.inv_idx(a)
}

/// `Omega(A)` in lexicographic order.
pub fn omega_pairs(group: &AbelianGroup) -> Vec<OmegaPair> {
    let n = group.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| is_omega_pair(group, a, b))
        .map(|(a, b)| OmegaPair { a, b })
        .collect()
}

/// `(|A|-1)(|A|-3) + t - 1` with `t = |T|`.
pub fn omega_size_formula(group: &AbelianGroup) -> i64 {
    let n = group.order() as i64;
    let t = group.torsion2_subgroup().order() as i64;
    (n - 1) * (n - 3) + t - 1
}

/// Coefficient vector of `(a-1)(b-1)g`.
pub fn product_translate(group: &AbelianGroup, a: usize, b: usize, g: usize) -> Vec<i64> {
    let mut v = vec![0i64; group.order()];
    v[group.mul_idx(group.mul_idx(a, b), g)] += 1;
    v[group.mul_idx(a, g)] -= 1;
    v[group.mul_idx(b, g)] -= 1;
    v[g] += 1;
    v
}

/// A norm-4 vector of `L(A)` with its four parametrizing triples `(a, b, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVector {
    pub coeffs: Vec<i64>,
    /// Sorted; the first is the canonical representative.
    pub triples: Vec<(usize, usize, usize)>,
}

impl MinimalVector {
    pub fn vector(&self, group: &AbelianGroup) -> GroupRingElement {
        GroupRingElement::from_ints(group, &self.coeffs).expect("length matches group")
    }

    pub fn representative(&self) -> (usize, usize, usize) {
        self.triples[0]
    }
}

/// Image of `(a, b, g) -> (a-1)(b-1)g` over `Omega(A) x A`, deduplicated and
/// sorted by coefficient vector. Empty for `|A| < 4`.
pub fn minimal_vectors(group: &AbelianGroup) -> Result<Vec<MinimalVector>> {
    let mut image: BTreeMap<Vec<i64>, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for p in omega_pairs(group) {
        for g in 0..group.order() {
            image
                .entry(product_translate(group, p.a, p.b, g))
                .or_default()
                .push((p.a, p.b, g));
        }
    }
    let mut out = Vec::with_capacity(image.len());
    for (coeffs, mut triples) in image {
        if triples.len() != 4 {
            return Err(Error::Consistency(format!(
                "minimal vector with {} preimages instead of 4",
                triples.len()
            )));
        }
        triples.sort_unstable();
        out.push(MinimalVector { coeffs, triples });
    }
    let expected = omega_size_formula(group) * group.order() as i64 / 4;
    if out.len() as i64 != expected.max(0) {
        return Err(Error::Consistency(format!(
            "{} minimal vectors, closed form predicts {expected}",
            out.len()
        )));
    }
    Ok(out)
}

/// `(1/4)|A|[(|A|-1)(|A|-3) + t - 1]`, the number of norm-4 vectors.
pub fn kissing_count(group: &AbelianGroup) -> i64 {
    group.order() as i64 * omega_size_formula(group) / 4
}

/// Squared minimum of `(ΔA)^r`.
///
/// For `r = 2` this is 8, 6 or 4 by group order; other powers are found by
/// short-vector enumeration.
pub fn min_distance(group: &AbelianGroup, power: u32) -> Result<i64> {
    if group.is_trivial() {
        return Err(Error::EmptyLattice);
    }
    if power == 2 {
        return Ok(match group.order() {
            2 => 8,
            3 => 6,
            _ => 4,
        });
    }
    let lattice = canonical_basis(group, power)?;
    Ok(enumeration::minimum(&lattice)?.0)
}

/// Vectors achieving the minimum of `(ΔA)^r`, sorted by coefficient vector.
pub fn min_vectors_any(group: &AbelianGroup, power: u32) -> Result<Vec<Vec<i64>>> {
    if power == 2 && group.order() >= 4 {
        return Ok(minimal_vectors(group)?.into_iter().map(|m| m.coeffs).collect());
    }
    let lattice = canonical_basis(group, power)?;
    Ok(enumeration::minimum(&lattice)?.1)
}

/// Index `[ΔA : (ΔA)^2]` and the invariant factors of the quotient, computed
/// from the Smith form of all products `(a-1)(b-1)` written in the basis
/// `{g - 1}` of `ΔA`.
pub fn augmentation_quotient(group: &AbelianGroup) -> (usize, Vec<BigInt>) {
    let n = group.order();
    let mut rows = Vec::new();
    for a in 1..n {
        for b in a..n {
            let v = product_translate(group, a, b, 0);
            rows.push(v[1..].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
    }
    let diag = linalg::smith_invariants(&rows);
    (diag.len(), diag)
}

/// Coordinates of the basis of `lattice` in the `{g - 1}` basis of `ΔA`.
pub fn coordinates_in_augmentation_ideal(lattice: &LatticeDescription) -> Vec<Vec<BigInt>> {
    lattice
        .basis_rows()
        .iter()
        .map(|r| r[1..].iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}
