//! Bases of `L(A)` made of minimal vectors.
//!
//! Three constructions are offered: the general one (start from the
//! canonical basis and swap out the two long vectors of each cyclic block),
//! the explicit cyclic basis `{(a-1)(a^k-1)} ∪ {(a^{-1}-1)(a^2-1), (a^{-1}-1)(a^3-1)}`,
//! and the single-orbit basis `{(a-1)(b-1)a^k}`. Every construction checks
//! its own output (norms and unimodularity) before returning.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{self, canonical_basis, LatticeDescription};
use crate::linalg;
use crate::rational;
use crate::ring::GroupRingElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    General,
    Sha,
    SingleOrbit,
    SmallGroup,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::General => "general",
            Construction::Sha => "sha",
            Construction::SingleOrbit => "single_orbit",
            Construction::SmallGroup => "small_group",
        })
    }
}

/// How `(a-1)^2` is traded for a norm-4 vector in the general construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Replacement {
    /// `(a-1)^2 -> (a-1)(a-b)`, using `(a-1)^2 = (a-1)(a-b) + (a-1)(b-1)`.
    #[default]
    Difference,
    /// `(a-1)^2 -> (a^{-1}-1)(a^2-1)` when `|<a>| >= 4`, else `(a-1)(ab-1)`
    /// with `b` from another factor.
    ProductForm,
}

impl FromStr for Replacement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "difference" => Ok(Replacement::Difference),
            "product" | "product-form" => Ok(Replacement::ProductForm),
            _ => Err(Error::InvalidArgument(format!("unknown replacement strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalBasis {
    pub lattice: LatticeDescription,
    pub vectors: Vec<GroupRingElement>,
    pub construction: Construction,
    pub norms: Vec<i64>,
    /// Every vector attains the lattice minimum.
    pub all_minimal: bool,
    /// Determinant of the change of basis against the canonical basis.
    pub determinant: BigInt,
}

impl MinimalBasis {
    fn checked(
        lattice: LatticeDescription,
        vectors: Vec<GroupRingElement>,
        construction: Construction,
        require_minimal: bool,
    ) -> Result<Self> {
        let group = lattice.group().clone();
        let min = lattice::min_distance(&group, 2)?;
        let norms: Vec<i64> = vectors
            .iter()
            .map(|v| {
                let n = v.norm_sq();
                rational::is_integer(&n)
                    .then(|| i64::try_from(n.numer()).ok())
                    .flatten()
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<_>>()?;
        let all_minimal = norms.iter().all(|&n| n == min);
        if require_minimal && !all_minimal {
            return Err(Error::Consistency(format!(
                "{construction} construction for {group} produced norms {norms:?}"
            )));
        }
        let (_, determinant) = change_of_basis(&vectors, &lattice)?;
        if !determinant.abs().is_one() {
            return Err(Error::Consistency(format!(
                "{construction} construction for {group} is not unimodular (det {determinant})"
            )));
        }
        Ok(MinimalBasis {
            lattice,
            vectors,
            construction,
            norms,
            all_minimal,
            determinant,
        })
    }

    pub fn to_doc(&self) -> BasisDoc {
        let rows: Vec<Vec<i64>> = self
            .vectors
            .iter()
            .map(|v| v.to_ints().expect("integral"))
            .collect();
        let gram = rows
            .iter()
            .map(|x| rows.iter().map(|y| lattice::dot(x, y)).collect())
            .collect();
        BasisDoc {
            group: self.lattice.group().to_string(),
            power: 2,
            basis: rows,
            gram,
            construction: self.construction,
            norms: self.norms.clone(),
            all_minimal: self.all_minimal,
            unimodular: self.determinant.abs().is_one(),
        }
    }
}

/// Basis export: the lattice schema plus construction tag and norms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub group: String,
    pub power: u32,
    pub basis: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    pub construction: Construction,
    pub norms: Vec<i64>,
    pub all_minimal: bool,
    pub unimodular: bool,
}

/// Integer matrix expressing `candidate` in the basis of `reference`, and its
/// determinant.
pub fn change_of_basis(
    candidate: &[GroupRingElement],
    reference: &LatticeDescription,
) -> Result<(Vec<Vec<BigInt>>, BigInt)> {
    if candidate.len() != reference.rank() {
        return Err(Error::InvalidArgument(format!(
            "{} candidate vectors for a lattice of rank {}",
            candidate.len(),
            reference.rank()
        )));
    }
    let mut rows = Vec::with_capacity(candidate.len());
    for v in candidate {
        if reference.power() == 2 && !lattice::membership(v) {
            return Err(Error::NotMember);
        }
        let coords = reference.coordinates(v)?;
        let ints = coords
            .iter()
            .map(|c| rational::is_integer(c).then(|| c.numer().clone()))
            .collect::<Option<Vec<BigInt>>>()
            .ok_or(Error::NonIntegralSolution)?;
        rows.push(ints);
    }
    let det = linalg::det_int(&rows);
    Ok((rows, det))
}

/// True iff `candidate` is a basis of the lattice spanned by `reference`.
pub fn verify_unimodular(candidate: &[GroupRingElement], reference: &LatticeDescription) -> Result<bool> {
    let (_, det) = change_of_basis(candidate, reference)?;
    Ok(det.abs().is_one())
}

pub fn general_min_basis(group: &AbelianGroup) -> Result<MinimalBasis> {
    general_min_basis_with(group, Replacement::Difference)
}

/// Minimal basis for `|A| > 4` or `A = C2xC2`; `C2` and `C3` get their
/// canonical bases, whose vectors attain the (larger) minimum there.
pub fn general_min_basis_with(group: &AbelianGroup, strategy: Replacement) -> Result<MinimalBasis> {
    let reference = canonical_basis(group, 2)?;
    let n = group.order();
    if n == 4 && group.is_cyclic() {
        return Err(Error::NoMinimalBasis(group.to_string()));
    }
    if n <= 3 {
        let vectors = reference.basis().to_vec();
        return MinimalBasis::checked(reference, vectors, Construction::SmallGroup, true);
    }

    let mut builder = Builder {
        group,
        pairs: lattice::square_basis_pairs(group).into_iter().map(Some).collect(),
        vectors: reference.basis().to_vec(),
    };
    for i in 0..group.rank() {
        let a = group.factor_generator(i);
        let order = group.invariant_factors()[i];
        let a_inv = group.inv_idx(a);
        let a2 = group.mul_idx(a, a);

        let square_pos = builder.position(a, a)?;
        let replacement = match strategy {
            Replacement::Difference => {
                let b = builder.partner(i, a, &[0, a, a_inv, a2])?;
                // (a-1)^2 = (a-1)(a-b) + (a-1)(b-1)
                let diff = &GroupRingElement::basis(group, a) - &GroupRingElement::basis(group, b);
                let new = &GroupRingElement::delta(group, a) * &diff;
                expect_identity(
                    &GroupRingElement::m(group, a, a),
                    &(&new + &GroupRingElement::m(group, a, b)),
                    "(a-1)^2 = (a-1)(a-b) + (a-1)(b-1)",
                )?;
                new
            }
            Replacement::ProductForm if order >= 4 => {
                // (a-1)^2 = (a-1)(a^{-1}-1) - (a^{-1}-1)(a^2-1)
                let new = GroupRingElement::m(group, a_inv, a2);
                expect_identity(
                    &GroupRingElement::m(group, a, a),
                    &(&GroupRingElement::m(group, a, a_inv) - &new),
                    "(a-1)^2 = (a-1)(a^-1-1) - (a^-1-1)(a^2-1)",
                )?;
                new
            }
            Replacement::ProductForm => {
                let b = builder.foreign_partner(i, a)?;
                let ab = group.mul_idx(a, b);
                // (a-1)^2 = (a-1)(b-1) - (a^2-1)(b-1) + (a-1)(ab-1)
                let new = GroupRingElement::m(group, a, ab);
                let rhs = &(&GroupRingElement::m(group, a, b) - &GroupRingElement::m(group, a2, b)) + &new;
                expect_identity(
                    &GroupRingElement::m(group, a, a),
                    &rhs,
                    "(a-1)^2 = (a-1)(b-1) - (a^2-1)(b-1) + (a-1)(ab-1)",
                )?;
                new
            }
        };
        builder.replace(square_pos, replacement);

        if order > 2 {
            let pos = builder.position(a, a_inv)?;
            let a_inv2 = group.mul_idx(a_inv, a_inv);
            let b = builder.partner(i, a, &[0, a, a_inv, a_inv2])?;
            // (a-1)(a^{-1}-1) = (a^{-1}-1)(ab-1) + (a-1)(b-1)
            let new = GroupRingElement::m(group, a_inv, group.mul_idx(a, b));
            expect_identity(
                &GroupRingElement::m(group, a, a_inv),
                &(&new + &GroupRingElement::m(group, a, b)),
                "(a-1)(a^-1-1) = (a^-1-1)(ab-1) + (a-1)(b-1)",
            )?;
            builder.replace(pos, new);
        }
    }
    let vectors = builder.vectors;
    MinimalBasis::checked(reference, vectors, Construction::General, true)
}

struct Builder<'a> {
    group: &'a AbelianGroup,
    /// Generating pair of each still-untouched canonical basis vector.
    pairs: Vec<Option<(usize, usize)>>,
    vectors: Vec<GroupRingElement>,
}

impl Builder<'_> {
    fn position(&self, x: usize, y: usize) -> Result<usize> {
        self.pairs
            .iter()
            .position(|p| *p == Some((x, y)))
            .ok_or_else(|| Error::Consistency(format!("basis vector for pair ({x}, {y}) is missing")))
    }

    fn has_product(&self, x: usize, y: usize) -> bool {
        self.pairs.iter().any(|p| *p == Some((x, y)) || *p == Some((y, x)))
    }

    fn replace(&mut self, pos: usize, v: GroupRingElement) {
        self.pairs[pos] = None;
        self.vectors[pos] = v;
    }

    /// `b` outside `forbidden` with `(a-1)(b-1)` still in the basis: `a^3` if
    /// possible, otherwise the first valid element of the next factor,
    /// cycling through the factors and ending with the factor of `a`.
    fn partner(&self, factor: usize, a: usize, forbidden: &[usize]) -> Result<usize> {
        let group = self.group;
        if group.invariant_factors()[factor] >= 5 {
            let a3 = group.pow_idx(a, 3);
            if !forbidden.contains(&a3) && self.has_product(a, a3) {
                return Ok(a3);
            }
        }
        let r = group.rank();
        for step in 1..=r {
            let j = (factor + step) % r;
            for c in cyclic_elements(group, j) {
                if !forbidden.contains(&c) && self.has_product(a, c) {
                    return Ok(c);
                }
            }
        }
        Err(Error::Consistency(format!(
            "no replacement partner for generator {} of {group}",
            group.element(a)
        )))
    }

    /// First element of another factor with `(a-1)(b-1)` in the basis.
    fn foreign_partner(&self, factor: usize, a: usize) -> Result<usize> {
        let group = self.group;
        let r = group.rank();
        (1..r)
            .map(|step| (factor + step) % r)
            .flat_map(|j| cyclic_elements(group, j))
            .find(|&c| c != 0 && self.has_product(a, c))
            .ok_or_else(|| Error::Unsupported(format!("{group} has no second cyclic factor")))
    }
}

fn cyclic_elements(group: &AbelianGroup, factor: usize) -> Vec<usize> {
    let g = group.factor_generator(factor);
    let mut out: Vec<usize> = (0..group.invariant_factors()[factor] as i64)
        .map(|k| group.pow_idx(g, k))
        .collect();
    out.sort_unstable();
    out
}

fn expect_identity(lhs: &GroupRingElement, rhs: &GroupRingElement, what: &str) -> Result<()> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Error::Consistency(format!("ring identity {what} failed")))
    }
}

fn cyclic_generator(group: &AbelianGroup, min_order: u64, what: &str) -> Result<usize> {
    if !group.is_cyclic() || (group.order() as u64) < min_order {
        return Err(Error::InvalidArgument(format!(
            "{what} needs a cyclic group of order at least {min_order}, got {group}"
        )));
    }
    Ok(group.factor_generator(0))
}

/// `{(a-1)(a^k-1) : 2 <= k <= n-2} ∪ {(a^{-1}-1)(a^2-1), (a^{-1}-1)(a^3-1)}`.
pub fn sha_basis(group: &AbelianGroup) -> Result<MinimalBasis> {
    let a = cyclic_generator(group, 5, "the explicit cyclic basis")?;
    let n = group.order() as i64;
    let a_inv = group.inv_idx(a);
    let mut vectors: Vec<GroupRingElement> = (2..=n - 2)
        .map(|k| GroupRingElement::m(group, a, group.pow_idx(a, k)))
        .collect();
    vectors.push(GroupRingElement::m(group, a_inv, group.pow_idx(a, 2)));
    vectors.push(GroupRingElement::m(group, a_inv, group.pow_idx(a, 3)));
    MinimalBasis::checked(canonical_basis(group, 2)?, vectors, Construction::Sha, true)
}

/// `{(a-1)(b-1)a^k : 0 <= k <= n-2}` for generators `a`, `b` of a cyclic
/// group. Valid whenever both generate; minimal only if `b != a^{±1}`.
pub fn single_orbit_basis(group: &AbelianGroup, a: usize, b: usize) -> Result<MinimalBasis> {
    cyclic_generator(group, 2, "the single-orbit basis")?;
    let n = group.order();
    for g in [a, b] {
        if g >= n || group.element_order(g) != n as u64 {
            return Err(Error::InvalidArgument(format!(
                "element {} does not generate {group}",
                if g < n { group.element(g).to_string() } else { g.to_string() }
            )));
        }
    }
    let head = GroupRingElement::m(group, a, b);
    let vectors = (0..n as i64 - 1)
        .map(|k| head.translate(group.pow_idx(a, k)))
        .collect();
    MinimalBasis::checked(canonical_basis(group, 2)?, vectors, Construction::SingleOrbit, false)
}

/// Partner for [`single_orbit_basis`]: `a^2` for odd `n >= 5`, else the first
/// generator other than `a^{±1}`, else `a` itself.
pub fn default_orbit_partner(group: &AbelianGroup, a: usize) -> usize {
    let n = group.order();
    if n % 2 == 1 && n >= 5 {
        return group.mul_idx(a, a);
    }
    let a_inv = group.inv_idx(a);
    (1..n)
        .find(|&b| b != a && b != a_inv && group.element_order(b) == n as u64)
        .unwrap_or(a)
}
