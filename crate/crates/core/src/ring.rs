//! Exact arithmetic in the group algebra `QA` (and its integral part `ZA`).
//!
//! Elements are dense coefficient vectors indexed by the canonical element
//! order of the group. Every operation is exact; nothing here touches
//! floating point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{parse_group_spec, AbelianGroup, GroupElement, Subgroup};
use crate::rational::{self, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: AbelianGroup,
    coeffs: Vec<Q>,
}

impl GroupRingElement {
    pub fn zero(group: &AbelianGroup) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![Q::zero(); group.order()],
        }
    }

    pub fn one(group: &AbelianGroup) -> Self {
        Self::basis(group, group.identity())
    }

    /// The group element with canonical index `idx`, viewed in the ring.
    pub fn basis(group: &AbelianGroup, idx: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[idx] = Q::one();
        x
    }

    pub fn from_element(group: &AbelianGroup, g: &GroupElement) -> Result<Self> {
        Ok(Self::basis(group, group.index_of(g)?))
    }

    pub fn from_coeffs(group: &AbelianGroup, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for {group}, got {}",
                group.order(),
                coeffs.len()
            )));
        }
        Ok(GroupRingElement {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn from_ints(group: &AbelianGroup, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(group, coeffs.iter().map(|&c| rational::q(c)).collect())
    }

    /// `g - 1` for the element with index `g`.
    pub fn delta(group: &AbelianGroup, g: usize) -> Self {
        let mut x = Self::basis(group, g);
        x.coeffs[0] -= Q::one();
        x
    }

    /// `(a-1)(b-1) = ab - a - b + 1`.
    pub fn m(group: &AbelianGroup, a: usize, b: usize) -> Self {
        &Self::delta(group, a) * &Self::delta(group, b)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> &Q {
        &self.coeffs[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }

    pub fn to_ints(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if !rational::is_integer(c) {
                    return Err(Error::NotIntegral);
                }
                c.numer().to_i64().ok_or(Error::Overflow)
            })
            .collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(self.zip_with(other, |x, y| x + y))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(self.zip_with(other, |x, y| x - y))
    }

    /// Convolution product. Zero coefficients of `self` are skipped, so sparse
    /// left factors are cheap.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        let n = self.group.order();
        let mut out = vec![Q::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[self.group.mul_idx(i, j)] += x * y;
            }
        }
        Ok(GroupRingElement {
            group: self.group.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, q: &Q) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// `x * g`: translation by a group element (a coefficient permutation).
    pub fn translate(&self, g: usize) -> Self {
        let mut out = vec![Q::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[self.group.mul_idx(i, g)] = c.clone();
        }
        GroupRingElement {
            group: self.group.clone(),
            coeffs: out,
        }
    }

    /// `(sum r_g g)* = sum r_g g^{-1}`.
    pub fn involution(&self) -> Self {
        let mut out = vec![Q::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[self.group.inv_idx(i)] = c.clone();
        }
        GroupRingElement {
            group: self.group.clone(),
            coeffs: out,
        }
    }

    /// Coefficient sum.
    pub fn augmentation(&self) -> Q {
        self.coeffs.iter().sum()
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> Q {
        self.coeffs[0].clone()
    }

    /// Evaluates `prod a^{k_a}` in the group; defined for integral elements.
    pub fn psi_idx(&self) -> Result<usize> {
        let mut acc = self.group.identity();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !rational::is_integer(c) {
                return Err(Error::NotIntegral);
            }
            if c.is_zero() {
                continue;
            }
            let ord = BigInt::from(self.group.element_order(i));
            let k = c.numer().mod_floor(&ord).to_i64().expect("reduced exponent");
            acc = self.group.mul_idx(acc, self.group.pow_idx(i, k));
        }
        Ok(acc)
    }

    pub fn psi(&self) -> Result<GroupElement> {
        Ok(self.group.element(self.psi_idx()?))
    }

    /// Euclidean inner product of coefficient vectors.
    pub fn inner(&self, other: &Self) -> Result<Q> {
        self.group.ensure_same(&other.group)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .map(|(x, y)| x * y)
            .sum())
    }

    pub fn norm_sq(&self) -> Q {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Matrix of `r -> self * r` in canonical order: entry `[g][h]` is the
    /// coefficient of `g h^{-1}`.
    pub fn left_mul_matrix(&self) -> Vec<Vec<Q>> {
        let n = self.coeffs.len();
        (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| self.coeffs[self.group.mul_idx(g, self.group.inv_idx(h))].clone())
                    .collect()
            })
            .collect()
    }

    /// When `self = c * other` for a scalar `c`, returns `c`.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<Q> {
        if !self.group.same_group(&other.group) {
            return None;
        }
        let pivot = other.coeffs.iter().position(|c| !c.is_zero())?;
        let c = &self.coeffs[pivot] / &other.coeffs[pivot];
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(x, y)| *x == &c * y)
            .then_some(c)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| f(x, y)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ElementDoc::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ElementDoc =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        doc.try_into()
    }
}

/// JSON form: `{"group": "C4xC2", "coeffs": ["p/q", ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementDoc {
    pub group: String,
    #[serde(with = "rational::ratio_vec")]
    pub coeffs: Vec<Q>,
}

impl From<&GroupRingElement> for ElementDoc {
    fn from(x: &GroupRingElement) -> Self {
        ElementDoc {
            group: x.group.to_string(),
            coeffs: x.coeffs.clone(),
        }
    }
}

impl TryFrom<ElementDoc> for GroupRingElement {
    type Error = Error;

    fn try_from(doc: ElementDoc) -> Result<Self> {
        let group = parse_group_spec(&doc.group)?;
        GroupRingElement::from_coeffs(&group, doc.coeffs)
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    /// Sparse form such as `1*() - 2*(1) + 1*(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = self.group.element(i);
            if first {
                write!(f, "{c}*{g}")?;
            } else if c.is_negative() {
                write!(f, " - {}*{g}", -c)?;
            } else {
                write!(f, " + {c}*{g}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;

    /// Panics on a group mismatch; see [`GroupRingElement::try_add`].
    fn add(self, rhs: &'a GroupRingElement) -> GroupRingElement {
        self.try_add(rhs).expect("group mismatch in addition")
    }
}

impl<'a> Sub<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &'a GroupRingElement) -> GroupRingElement {
        self.try_sub(rhs).expect("group mismatch in subtraction")
    }
}

impl<'a> Mul<&'a GroupRingElement> for &'a GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &'a GroupRingElement) -> GroupRingElement {
        self.try_mul(rhs).expect("group mismatch in multiplication")
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// The idempotent `e_B = (1/|B|) sum_{b in B} b` of a subgroup.
#[derive(Clone, Debug)]
pub struct Idempotent {
    pub subgroup: Subgroup,
    pub value: GroupRingElement,
}

pub fn idempotent(b: &Subgroup) -> Idempotent {
    let group = b.parent();
    let w = Q::new(BigInt::one(), BigInt::from(b.order()));
    let mut value = GroupRingElement::zero(group);
    for &i in b.indices() {
        value.coeffs[i] = w.clone();
    }
    Idempotent {
        subgroup: b.clone(),
        value,
    }
}

/// `1 - e_B`.
pub fn one_minus_idempotent(b: &Subgroup) -> GroupRingElement {
    let e = idempotent(b).value;
    &GroupRingElement::one(b.parent()) - &e
}

/// `1 - e_A` for the whole group.
pub fn augmentation_projector(group: &AbelianGroup) -> GroupRingElement {
    let whole = Subgroup::generated_by(group, &(0..group.order()).collect::<Vec<_>>());
    one_minus_idempotent(&whole)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn module_operations() {
        let a = grp("C5");
        let x = GroupRingElement::delta(&a, 1);
        let y = GroupRingElement::delta(&a, 2);
        let sum = &x + &y;
        assert_eq!(sum.to_ints().unwrap(), vec![-2, 1, 1, 0, 0]);
        assert!((&x - &x).is_zero());
        let scaled = augmentation_projector(&a).scale(&q(5));
        assert!(scaled.is_integral());
        assert_eq!(scaled.to_ints().unwrap(), vec![4, -1, -1, -1, -1]);
    }

    #[test]
    fn product_expansion() {
        let a = grp("C4xC2");
        let (ai, bi) = (1, 2);
        let m = GroupRingElement::m(&a, ai, bi);
        let mut expect = GroupRingElement::basis(&a, a.mul_idx(ai, bi));
        expect = &expect - &GroupRingElement::basis(&a, ai);
        expect = &expect - &GroupRingElement::basis(&a, bi);
        expect = &expect + &GroupRingElement::one(&a);
        assert_eq!(m, expect);
        assert!(m.augmentation().is_zero());
        assert_eq!(m.psi_idx().unwrap(), 0);
    }

    #[test]
    fn involution_and_augmentation_examples() {
        let a = grp("C5");
        let x = &GroupRingElement::basis(&a, 1) + &GroupRingElement::basis(&a, 2).scale(&q(2));
        let xs = x.involution();
        assert_eq!(xs.to_ints().unwrap(), vec![0, 0, 0, 2, 1]);
        assert_eq!(xs.involution(), x);
        let e = augmentation_projector(&a);
        assert!(e.augmentation().is_zero());
        let y = &GroupRingElement::one(&a).scale(&q(3)) + &GroupRingElement::basis(&a, 1).scale(&q(2));
        assert_eq!(y.augmentation(), q(5));
    }

    #[test]
    fn psi_examples() {
        let a = grp("C4xC2");
        let (ai, bi) = (1, 3);
        let s = &GroupRingElement::basis(&a, ai) + &GroupRingElement::basis(&a, bi);
        assert_eq!(s.psi_idx().unwrap(), a.mul_idx(ai, bi));
        let two = GroupRingElement::delta(&a, ai).scale(&q(2));
        assert_eq!(two.psi_idx().unwrap(), a.mul_idx(ai, ai));
        let neg = GroupRingElement::basis(&a, ai).scale(&q(-3));
        assert_eq!(neg.psi_idx().unwrap(), a.pow_idx(ai, -3));
        assert_eq!(
            GroupRingElement::one(&a).scale(&frac(1, 2)).psi_idx(),
            Err(Error::NotIntegral)
        );
    }

    #[test]
    fn norm_table_of_products() {
        for spec in ["C2", "C3", "C6", "C4xC2", "C5", "C2xC2"] {
            let a = grp(spec);
            for ai in 1..a.order() {
                for bi in 1..a.order() {
                    let n = GroupRingElement::m(&a, ai, bi).norm_sq();
                    let inv = a.inv_idx(ai);
                    let expect = if ai == bi && ai == inv {
                        8
                    } else if ai == bi || bi == inv {
                        6
                    } else {
                        4
                    };
                    assert_eq!(n, q(expect), "{spec} a={ai} b={bi}");
                }
            }
        }
    }

    #[test]
    fn idempotent_examples() {
        let a = grp("C6");
        let whole = Subgroup::generated_by(&a, &[1]);
        let e = idempotent(&whole).value;
        assert_eq!(&e * &e, e);
        assert_eq!(e.augmentation(), q(1));
        let t = a.torsion2_subgroup();
        let et = idempotent(&t).value;
        for &b in t.indices() {
            assert_eq!(&GroupRingElement::basis(&a, b) * &et, et);
        }
    }

    #[test]
    fn left_multiplication_by_projector() {
        let a = grp("C4xC2");
        let n = a.order();
        let m = augmentation_projector(&a).left_mul_matrix();
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j { frac(n as i64 - 1, n as i64) } else { frac(-1, n as i64) };
                assert_eq!(*v, expect);
            }
        }
    }

    #[test]
    fn scalar_multiple_detection() {
        let a = grp("C5");
        let p = augmentation_projector(&a);
        assert_eq!(p.scale(&q(40)).scalar_multiple_of(&p), Some(q(40)));
        let other = GroupRingElement::delta(&a, 1);
        assert_eq!(other.scalar_multiple_of(&p), None);
    }

    #[test]
    fn mismatched_groups() {
        let x = GroupRingElement::one(&grp("C4xC2"));
        let y = GroupRingElement::one(&grp("C2xC4"));
        assert!(matches!(x.try_add(&y), Err(Error::GroupMismatch { .. })));
        assert!(x.try_mul(&y).is_err());
        assert!(x.inner(&y).is_err());
    }

    #[test]
    fn json_form() {
        let a = grp("C3");
        let x = GroupRingElement::m(&a, 1, 1).scale(&frac(1, 2));
        let text = x.to_json();
        assert_eq!(text, r#"{"group":"C3","coeffs":["1/2","-1/1","1/2"]}"#);
        assert_eq!(GroupRingElement::from_json(&text).unwrap(), x);
        assert!(GroupRingElement::from_json(r#"{"group":"C3","coeffs":["1/1"]}"#).is_err());
    }
}
