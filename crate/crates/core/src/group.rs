//! Finite abelian groups in a fixed invariant-factor presentation.
//!
//! A group is the product `C_{n_1} x ... x C_{n_k}` exactly as written; no
//! canonicalization of the factor list takes place, so `C4xC2` and `C2xC4`
//! are different objects whose elements are enumerated differently.
//!
//! Elements are residue tuples. The canonical index of an element is its
//! position in lexicographic mixed-radix order (first factor most
//! significant), and every coefficient vector in the crate is laid out in
//! that order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Above this order the multiplication table is not materialized.
const TABLE_LIMIT: usize = 1024;

#[derive(Debug)]
struct GroupData {
    factors: Vec<u64>,
    order: usize,
    strides: Vec<usize>,
    mul_table: Option<Vec<u32>>,
    inv_table: Vec<u32>,
}

/// A finite abelian group given by its list of cyclic factors.
///
/// Cloning is cheap; the element tables are shared.
#[derive(Clone)]
pub struct AbelianGroup {
    data: Arc<GroupData>,
}

/// An element of an [`AbelianGroup`] as a tuple of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    /// Builds `C_{n_1} x ... x C_{n_k}`. An empty list is the trivial group.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidArgument(format!(
                "cyclic factor C{bad} is not allowed in a product (factors must be >= 2)"
            )));
        }
        let mut order: usize = 1;
        for &n in &factors {
            order = usize::try_from(n)
                .ok()
                .and_then(|n| order.checked_mul(n))
                .filter(|&o| o <= u32::MAX as usize)
                .ok_or(Error::Overflow)?;
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let mut data = GroupData {
            factors,
            order,
            strides,
            mul_table: None,
            inv_table: Vec::new(),
        };
        data.inv_table = (0..order)
            .map(|i| arith_inv(&data, i) as u32)
            .collect();
        if order <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for i in 0..order {
                for j in 0..order {
                    table.push(arith_mul(&data, i, j) as u32);
                }
            }
            data.mul_table = Some(table);
        }
        Ok(AbelianGroup {
            data: Arc::new(data),
        })
    }

    pub fn trivial() -> Self {
        AbelianGroup::new(Vec::new()).expect("trivial group")
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(AbelianGroup::trivial());
        }
        AbelianGroup::new(vec![n])
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.data.factors
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn rank(&self) -> usize {
        self.data.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.data.order == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.data.factors.len() <= 1
    }

    /// True when every element squares to the identity.
    pub fn is_elementary_two(&self) -> bool {
        self.data.factors.iter().all(|&n| n == 2)
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Canonical index of `g`, validating its coordinates.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        if g.coords.len() != self.data.factors.len()
            || g.coords.iter().zip(&self.data.factors).any(|(c, n)| c >= n)
        {
            return Err(Error::NotAnElement(format!("{g} in {self}")));
        }
        Ok(g.coords
            .iter()
            .zip(&self.data.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum())
    }

    /// Element with canonical index `idx`.
    pub fn element(&self, idx: usize) -> GroupElement {
        assert!(idx < self.data.order, "element index out of range");
        GroupElement {
            coords: digits(&self.data, idx),
        }
    }

    /// All elements in canonical (lexicographic mixed-radix) order.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    /// Generator of the `i`-th cyclic factor.
    pub fn factor_generator(&self, i: usize) -> usize {
        self.data.strides[i]
    }

    #[inline]
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        match &self.data.mul_table {
            Some(t) => t[i * self.data.order + j] as usize,
            None => arith_mul(&self.data, i, j),
        }
    }

    #[inline]
    pub fn inv_idx(&self, i: usize) -> usize {
        self.data.inv_table[i] as usize
    }

    /// `g^k` for any integer exponent.
    pub fn pow_idx(&self, i: usize, k: i64) -> usize {
        let d = digits(&self.data, i);
        let coords: Vec<u64> = d
            .iter()
            .zip(&self.data.factors)
            .map(|(&c, &n)| {
                let n = n as i128;
                ((c as i128 * k as i128).rem_euclid(n)) as u64
            })
            .collect();
        encode(&self.data, &coords)
    }

    /// Order of the element with index `i`.
    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul_idx(x, i);
            k += 1;
        }
        k
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let (i, j) = (self.index_of(g)?, self.index_of(h)?);
        Ok(self.element(self.mul_idx(i, j)))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(self.inv_idx(self.index_of(g)?)))
    }

    pub fn same_group(&self, other: &AbelianGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.factors == other.data.factors
    }

    pub(crate) fn ensure_same(&self, other: &AbelianGroup) -> Result<()> {
        if self.same_group(other) {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    /// The subgroup `S = {a^2}` of squares.
    pub fn squares_subgroup(&self) -> Subgroup {
        let set: BTreeSet<usize> = (0..self.order()).map(|i| self.mul_idx(i, i)).collect();
        Subgroup::from_sorted(self.clone(), set.into_iter().collect())
    }

    /// The subgroup `T = {a : a^2 = 1}` of elements of order at most two.
    pub fn torsion2_subgroup(&self) -> Subgroup {
        let elems = (0..self.order())
            .filter(|&i| self.mul_idx(i, i) == 0)
            .collect();
        Subgroup::from_sorted(self.clone(), elems)
    }
}

fn digits(data: &GroupData, mut idx: usize) -> Vec<u64> {
    let mut out = vec![0u64; data.factors.len()];
    for (k, &s) in data.strides.iter().enumerate() {
        out[k] = (idx / s) as u64;
        idx %= s;
    }
    out
}

fn encode(data: &GroupData, coords: &[u64]) -> usize {
    coords
        .iter()
        .zip(&data.strides)
        .map(|(&c, &s)| c as usize * s)
        .sum()
}

fn arith_mul(data: &GroupData, i: usize, j: usize) -> usize {
    let (a, b) = (digits(data, i), digits(data, j));
    let c: Vec<u64> = a
        .iter()
        .zip(&b)
        .zip(&data.factors)
        .map(|((x, y), n)| (x + y) % n)
        .collect();
    encode(data, &c)
}

fn arith_inv(data: &GroupData, i: usize) -> usize {
    let a = digits(data, i);
    let c: Vec<u64> = a
        .iter()
        .zip(&data.factors)
        .map(|(x, n)| (n - x) % n)
        .collect();
    encode(data, &c)
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}

impl Eq for AbelianGroup {}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({self})")
    }
}

impl fmt::Display for AbelianGroup {
    /// Writes the group in spec grammar, e.g. `C4xC2`; the trivial group is `C1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.data.factors.is_empty() {
            return write!(f, "C1");
        }
        for (i, n) in self.data.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "C{n}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

/// Parses `C<n>` terms joined by `x`, e.g. `C4xC2`.
///
/// Case-insensitive and whitespace-tolerant. `C1` denotes the trivial group
/// and must stand alone.
pub fn parse_group_spec(spec: &str) -> Result<AbelianGroup> {
    let compact: String = spec
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    if compact.is_empty() {
        return Err(Error::Parse {
            token: spec.to_string(),
            reason: "empty group spec".into(),
        });
    }
    let terms: Vec<&str> = compact.split('x').collect();
    let mut factors = Vec::with_capacity(terms.len());
    for term in &terms {
        let digits = term.strip_prefix('c').ok_or_else(|| Error::Parse {
            token: term.to_string(),
            reason: "expected a term of the form C<n>".into(),
        })?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse {
                token: term.to_string(),
                reason: "expected a positive integer after C".into(),
            });
        }
        let n: u64 = digits.parse().map_err(|_| Error::Parse {
            token: term.to_string(),
            reason: "integer out of range".into(),
        })?;
        if n < 1 {
            return Err(Error::Parse {
                token: term.to_string(),
                reason: "cyclic factor must be at least 1".into(),
            });
        }
        if n == 1 && terms.len() > 1 {
            return Err(Error::Parse {
                token: term.to_string(),
                reason: "C1 denotes the trivial group and must appear alone".into(),
            });
        }
        if n > 1 {
            factors.push(n);
        }
    }
    AbelianGroup::new(factors).map_err(|e| Error::Parse {
        token: spec.to_string(),
        reason: e.to_string(),
    })
}

/// A subgroup, stored as the sorted canonical indices of its elements.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: AbelianGroup,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    fn from_sorted(parent: AbelianGroup, elements: Vec<usize>) -> Self {
        let mut member = vec![false; parent.order()];
        for &e in &elements {
            member[e] = true;
        }
        Subgroup {
            parent,
            elements,
            member,
        }
    }

    /// Validates that `elements` is closed under products and inverses.
    pub fn from_elements(parent: &AbelianGroup, elements: &[GroupElement]) -> Result<Self> {
        let mut idx = BTreeSet::new();
        for g in elements {
            idx.insert(parent.index_of(g)?);
        }
        let sub = Subgroup::from_sorted(parent.clone(), idx.into_iter().collect());
        let closed = sub.member[0]
            && sub.elements.iter().all(|&a| {
                sub.member[parent.inv_idx(a)]
                    && sub.elements.iter().all(|&b| sub.member[parent.mul_idx(a, b)])
            });
        if !closed {
            return Err(Error::InvalidArgument(
                "element set is not closed under the group operation".into(),
            ));
        }
        Ok(sub)
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_by(parent: &AbelianGroup, gens: &[usize]) -> Self {
        let mut member = vec![false; parent.order()];
        member[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul_idx(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        let elements = (0..parent.order()).filter(|&i| member[i]).collect();
        Subgroup {
            parent: parent.clone(),
            elements,
            member,
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.elements.iter().map(|&i| self.parent.element(i)).collect()
    }

    #[inline]
    pub fn contains_idx(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

/// Isomorphism types of abelian groups of order `n`, as invariant factors in
/// descending order (`d_{k+1} | d_k`). Sorted lexicographically descending,
/// so the cyclic group comes first.
pub fn abelian_group_types(n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    for (p, e) in factorize(n) {
        per_prime.push(
            partitions(e)
                .into_iter()
                .map(|parts| parts.into_iter().map(|k| p.pow(k)).collect())
                .collect(),
        );
    }
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for choices in per_prime {
        let mut next = Vec::new();
        for acc in &out {
            for powers in &choices {
                let len = acc.len().max(powers.len());
                let merged: Vec<u64> = (0..len)
                    .map(|k| acc.get(k).copied().unwrap_or(1) * powers.get(k).copied().unwrap_or(1))
                    .collect();
                next.push(merged);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Elementary divisors (prime-power factors) of an invariant-factor list,
/// grouped by prime in ascending order.
pub fn elementary_divisors(factors: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    for &d in factors {
        for (p, e) in factorize(d) {
            out.push((p, p.pow(e)));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
    out.into_iter().map(|(_, q)| q).collect()
}

/// Every presentation of the group with invariant factors `factors`: all
/// distinct orderings of the invariant factors and of the elementary
/// divisors. The given order comes first, the rest follow sorted.
pub fn presentations(factors: &[u64]) -> Vec<Vec<u64>> {
    let mut rest = std::collections::BTreeSet::new();
    for base in [factors.to_vec(), elementary_divisors(factors)] {
        permute(&mut base.clone(), 0, &mut rest);
    }
    rest.remove(factors);
    let mut out = vec![factors.to_vec()];
    out.extend(rest);
    out
}

fn permute(v: &mut Vec<u64>, k: usize, out: &mut std::collections::BTreeSet<Vec<u64>>) {
    if k == v.len() {
        out.insert(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` into non-increasing parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
