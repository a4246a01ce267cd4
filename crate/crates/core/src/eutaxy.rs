//! Eutaxy certificates for `L(A)`.
//!
//! A certificate lists weights `gamma(a, b) > 0` with
//! `sum gamma(a,b) m(a,b) m(a,b)^* = 1 - e_A`, where `m(a,b) = (a-1)(b-1)`,
//! and the induced weights `lambda_s` on the minimal vectors. Verification
//! is exact and never trusts the branch that produced the weights.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{parse_group_spec, AbelianGroup, GroupElement, Subgroup};
use crate::lattice::{self, omega_pairs, product_translate};
use crate::rational::{self, Q};
use crate::ring::{augmentation_projector, one_minus_idempotent, GroupRingElement};

fn mm_star(group: &AbelianGroup, a: usize, b: usize) -> GroupRingElement {
    let m = GroupRingElement::m(group, a, b);
    &m * &m.involution()
}

/// `sum over Omega(A) of m(a,b) m(a,b)^*`, summed directly and checked
/// against `4n(n-4)(1-e_A) + 4n(1-e_S) + 8|T|(1-e_T)`.
pub fn sum_mm_star(group: &AbelianGroup) -> Result<GroupRingElement> {
    let mut direct = GroupRingElement::zero(group);
    for p in omega_pairs(group) {
        direct = &direct + &mm_star(group, p.a, p.b);
    }
    let closed = sum_mm_star_closed_form(group);
    if direct != closed {
        return Err(Error::Consistency(format!(
            "sum of m m* over Omega({group}) disagrees with its closed form"
        )));
    }
    Ok(direct)
}

pub fn sum_mm_star_closed_form(group: &AbelianGroup) -> GroupRingElement {
    let n = group.order() as i64;
    let t = group.torsion2_subgroup();
    let s = group.squares_subgroup();
    let main = augmentation_projector(group).scale(&rational::q(4 * n * (n - 4)));
    let squares = one_minus_idempotent(&s).scale(&rational::q(4 * n));
    let torsion = one_minus_idempotent(&t).scale(&rational::q(8 * t.order() as i64));
    &(&main + &squares) + &torsion
}

/// Pairs `(a, b)` with exactly one of `a`, `b` in `B` and both nontrivial.
fn is_cross(b: &Subgroup, x: usize, y: usize) -> bool {
    x != 0 && y != 0 && b.contains_idx(x) != b.contains_idx(y)
}

/// Sum of `m(a,b) m(a,b)^*` over `B x (A \ B)` and `(A \ B) x B`, checked
/// against `8|B|^2 (|A:B| - 1)(1 - e_B)`.
pub fn cross_sum(b: &Subgroup) -> Result<GroupRingElement> {
    if b.is_trivial() || b.is_whole() {
        return Err(Error::InvalidArgument(
            "cross sums need a proper nontrivial subgroup".into(),
        ));
    }
    let group = b.parent();
    let n = group.order();
    let mut direct = GroupRingElement::zero(group);
    for x in 0..n {
        for y in 0..n {
            if is_cross(b, x, y) {
                direct = &direct + &mm_star(group, x, y);
            }
        }
    }
    let bo = b.order() as i64;
    let closed = one_minus_idempotent(b).scale(&rational::q(8 * bo * bo * (b.index_in_parent() as i64 - 1)));
    if direct != closed {
        return Err(Error::Consistency(format!(
            "cross sum over a subgroup of order {bo} in {group} disagrees with its closed form"
        )));
    }
    Ok(direct)
}

/// Whether the minimal vectors of `L(A)` are strongly eutactic: true iff
/// `|A|` is odd or `A` is elementary abelian of exponent 2.
///
/// The answer is cross-checked against the definition (the sum of
/// `m m^*` over `Omega(A)` is a positive multiple of `1 - e_A`).
pub fn classify_strong(group: &AbelianGroup) -> Result<bool> {
    if group.order() < 4 {
        return Err(Error::InvalidArgument(format!(
            "strong eutaxy is classified for |A| >= 4, got {group}"
        )));
    }
    let predicted = group.order() % 2 == 1 || group.is_elementary_two();
    let definitional = strong_scalar(group)?.is_some();
    if predicted != definitional {
        return Err(Error::Consistency(format!(
            "strong eutaxy of {group}: classification {predicted}, definition {definitional}"
        )));
    }
    Ok(predicted)
}

/// The scalar `c > 0` with `sum m m^* = c (1 - e_A)`, if there is one.
pub fn strong_scalar(group: &AbelianGroup) -> Result<Option<Q>> {
    let sum = sum_mm_star(group)?;
    Ok(sum
        .scalar_multiple_of(&augmentation_projector(group))
        .filter(|c| c.is_positive()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    OddStrong,
    #[serde(rename = "elementary2_strong")]
    Elementary2Strong,
    Mixed,
    SmallGroup,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::OddStrong => "odd_strong",
            Branch::Elementary2Strong => "elementary2_strong",
            Branch::Mixed => "mixed",
            Branch::SmallGroup => "small_group",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaEntry {
    pub a: usize,
    pub b: usize,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EutaxyCertificate {
    pub group: AbelianGroup,
    pub branch: Branch,
    pub gamma: Vec<GammaEntry>,
    /// Minimal vectors as coefficient vectors, sorted.
    pub vectors: Vec<Vec<i64>>,
    /// `lambda[i]` belongs to `vectors[i]`.
    pub lambda: Vec<Q>,
}

/// Builds the certificate for `L(A)`.
///
/// * odd `|A| >= 5`: `gamma = 1 / (4n(n-3))` on all of `Omega(A)`;
/// * `A = C2^k`, `k >= 2`: `gamma = 1 / (4n(n-2))`;
/// * otherwise, `n > 4`: `gamma` is `1 / (4n(n-4))`, lowered on the pairs
///   crossing `S` or `T`;
/// * `|A| <= 3`: uniform weights over all pairs `a, b != 1`.
pub fn build_certificate(group: &AbelianGroup) -> Result<EutaxyCertificate> {
    let n = group.order();
    if group.is_trivial() {
        return Err(Error::EmptyLattice);
    }
    if n == 4 && group.is_cyclic() {
        return Err(Error::NotEutactic(group.to_string()));
    }
    let ni = n as i64;
    let (branch, gamma) = if n <= 3 {
        // each m m^* is 16(1-e_A) for C2 and 9(1-e_A) for C3
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        let w = rational::frac(1, pairs.len() as i64 * if n == 2 { 16 } else { 9 });
        let gamma = pairs
            .into_iter()
            .map(|(a, b)| GammaEntry { a, b, value: w.clone() })
            .collect();
        (Branch::SmallGroup, gamma)
    } else if n % 2 == 1 || group.is_elementary_two() {
        let (branch, w) = if n % 2 == 1 {
            (Branch::OddStrong, rational::frac(1, 4 * ni * (ni - 3)))
        } else {
            (Branch::Elementary2Strong, rational::frac(1, 4 * ni * (ni - 2)))
        };
        let gamma = omega_pairs(group)
            .into_iter()
            .map(|p| GammaEntry { a: p.a, b: p.b, value: w.clone() })
            .collect();
        (branch, gamma)
    } else {
        (Branch::Mixed, mixed_gamma(group)?)
    };
    let vectors = lattice::min_vectors_any(group, 2)?;
    let lambda = lift_lambda(group, &gamma, &vectors)?;
    Ok(EutaxyCertificate {
        group: group.clone(),
        branch,
        gamma,
        vectors,
        lambda,
    })
}

fn mixed_gamma(group: &AbelianGroup) -> Result<Vec<GammaEntry>> {
    let n = group.order() as i64;
    let s = group.squares_subgroup();
    let t = group.torsion2_subgroup();
    let coefficient = |b: &Subgroup, num: i64| {
        let bo = b.order() as i64;
        rational::frac(num, 8 * bo * bo * (b.index_in_parent() as i64 - 1))
    };
    let c_s = coefficient(&s, 4 * n);
    let c_t = coefficient(&t, 8 * t.order() as i64);
    if &c_s + &c_t >= Q::one() {
        return Err(Error::Consistency(format!(
            "mixed weights for {group} would not be positive"
        )));
    }
    let base = rational::frac(1, 4 * n * (n - 4));
    Ok(omega_pairs(group)
        .into_iter()
        .map(|p| {
            let mut w = Q::one();
            if is_cross(&s, p.a, p.b) {
                w -= &c_s;
            }
            if is_cross(&t, p.a, p.b) {
                w -= &c_t;
            }
            GammaEntry { a: p.a, b: p.b, value: w * &base }
        })
        .collect())
}

/// `lambda_s = sum of gamma(a, b)` over the triples `(a, b, g)` with
/// `(a-1)(b-1)g = s`. Fails if some triple lands outside `vectors`.
pub fn lift_lambda(group: &AbelianGroup, gamma: &[GammaEntry], vectors: &[Vec<i64>]) -> Result<Vec<Q>> {
    let index: BTreeMap<&[i64], usize> = vectors.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut lambda = vec![Q::zero(); vectors.len()];
    for e in gamma {
        if e.a >= group.order() || e.b >= group.order() {
            return Err(Error::NotAnElement(format!("index {}", e.a.max(e.b))));
        }
        for g in 0..group.order() {
            let v = product_translate(group, e.a, e.b, g);
            let i = *index.get(v.as_slice()).ok_or_else(|| {
                Error::Consistency(format!(
                    "(a-1)(b-1)g for a={}, b={}, g={} is not a listed minimal vector",
                    group.element(e.a),
                    group.element(e.b),
                    group.element(g)
                ))
            })?;
            lambda[i] += &e.value;
        }
    }
    Ok(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Positivity,
    GroupRingIdentity,
    LambdaLift,
    VectorSet,
    ProjectionIdentity,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Positivity => "positivity",
            Check::GroupRingIdentity => "group-ring identity",
            Check::LambdaLift => "lambda lift",
            Check::VectorSet => "vector set",
            Check::ProjectionIdentity => "projection identity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{}: ok", self.check)
        } else {
            write!(f, "{} violated: {}", self.check, self.detail)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Runs every check, in order: positivity of all weights,
/// `sum gamma m m^* = 1 - e_A`, the lambda lift, the vector list against the
/// minimal vectors of `L(A)`, and `sum lambda_s s s^T = I - J/n`.
pub fn verify_certificate(cert: &EutaxyCertificate) -> VerificationReport {
    let group = &cert.group;
    let n = group.order();
    let mut checks = Vec::with_capacity(5);
    let mut push = |check, result: std::result::Result<(), String>| {
        checks.push(CheckOutcome {
            check,
            passed: result.is_ok(),
            detail: result.err().unwrap_or_default(),
        })
    };

    let positivity = if cert.gamma.is_empty() {
        Err("no gamma weights".to_string())
    } else if let Some(e) = cert.gamma.iter().find(|e| !e.value.is_positive()) {
        Err(format!("gamma({}, {}) = {}", element(group, e.a), element(group, e.b), rational::fmt_ratio(&e.value)))
    } else if cert.lambda.len() != cert.vectors.len() {
        Err(format!("{} lambda weights for {} vectors", cert.lambda.len(), cert.vectors.len()))
    } else if let Some(i) = cert.lambda.iter().position(|l| !l.is_positive()) {
        Err(format!("lambda[{i}] = {}", rational::fmt_ratio(&cert.lambda[i])))
    } else {
        Ok(())
    };
    push(Check::Positivity, positivity);

    let identity = (|| {
        let mut sum = GroupRingElement::zero(group);
        for e in &cert.gamma {
            if e.a >= n || e.b >= n {
                return Err(format!("pair index out of range for {group}"));
            }
            sum = &sum + &mm_star(group, e.a, e.b).scale(&e.value);
        }
        if sum == augmentation_projector(group) {
            Ok(())
        } else {
            Err(format!("sum of gamma m m* is {sum}, not 1 - e_A"))
        }
    })();
    push(Check::GroupRingIdentity, identity);

    let lift = match lift_lambda(group, &cert.gamma, &cert.vectors) {
        Ok(l) if l == cert.lambda => Ok(()),
        Ok(l) => {
            let i = l.iter().zip(&cert.lambda).position(|(x, y)| x != y).unwrap_or(0);
            Err(format!("lambda[{i}] does not equal the sum of gamma over its triples"))
        }
        Err(e) => Err(e.to_string()),
    };
    push(Check::LambdaLift, lift);

    let vector_set = match lattice::min_vectors_any(group, 2) {
        Ok(expected) if expected == cert.vectors => Ok(()),
        Ok(expected) => Err(format!(
            "{} listed vectors, lattice has {} minimal vectors",
            cert.vectors.len(),
            expected.len()
        )),
        Err(e) => Err(e.to_string()),
    };
    push(Check::VectorSet, vector_set);

    push(Check::ProjectionIdentity, projection_identity(cert));

    VerificationReport { checks }
}

fn element(group: &AbelianGroup, i: usize) -> String {
    if i < group.order() {
        group.element(i).to_string()
    } else {
        format!("#{i}")
    }
}

/// `sum lambda_s s s^T`, as an `n x n` rational matrix.
pub fn weighted_outer_sum(n: usize, vectors: &[Vec<i64>], lambda: &[Q]) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); n]; n];
    for (s, l) in vectors.iter().zip(lambda) {
        let support: Vec<usize> = (0..n.min(s.len())).filter(|&i| s[i] != 0).collect();
        for &i in &support {
            for &j in &support {
                m[i][j] += l * BigInt::from(s[i] * s[j]);
            }
        }
    }
    m
}

fn projection_identity(cert: &EutaxyCertificate) -> std::result::Result<(), String> {
    let n = cert.group.order();
    if cert.vectors.iter().any(|v| v.len() != n) || cert.lambda.len() != cert.vectors.len() {
        return Err("vector or weight list has the wrong shape".into());
    }
    let m = weighted_outer_sum(n, &cert.vectors, &cert.lambda);
    let off = -rational::frac(1, n as i64);
    let diag = Q::one() + &off;
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { &diag } else { &off };
            if x != want {
                return Err(format!(
                    "entry ({i}, {j}) is {}, expected {}",
                    rational::fmt_ratio(x),
                    rational::fmt_ratio(want)
                ));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaDoc {
    pub a: GroupElement,
    pub b: GroupElement,
    #[serde(with = "rational::ratio")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaDoc {
    pub vector_index: usize,
    #[serde(with = "rational::ratio")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub group: String,
    pub branch: Branch,
    pub gamma: Vec<GammaDoc>,
    pub lambda: Vec<LambdaDoc>,
    pub vectors: Vec<Vec<i64>>,
    pub verified: bool,
}

impl EutaxyCertificate {
    pub fn to_doc(&self, verified: bool) -> CertificateDoc {
        CertificateDoc {
            group: self.group.to_string(),
            branch: self.branch,
            gamma: self
                .gamma
                .iter()
                .map(|e| GammaDoc {
                    a: self.group.element(e.a),
                    b: self.group.element(e.b),
                    value: e.value.clone(),
                })
                .collect(),
            lambda: self
                .lambda
                .iter()
                .enumerate()
                .map(|(vector_index, value)| LambdaDoc { vector_index, value: value.clone() })
                .collect(),
            vectors: self.vectors.clone(),
            verified,
        }
    }

    /// Pretty JSON, with `verified` set from a fresh verification.
    pub fn to_json(&self) -> String {
        let verified = verify_certificate(self).passed();
        serde_json::to_string_pretty(&self.to_doc(verified)).expect("serializable")
    }

    /// Reads a certificate without checking it; the stored `verified` flag
    /// is ignored.
    pub fn from_doc(doc: &CertificateDoc) -> Result<Self> {
        let group = parse_group_spec(&doc.group)?;
        let gamma = doc
            .gamma
            .iter()
            .map(|g| {
                Ok(GammaEntry {
                    a: group.index_of(&g.a)?,
                    b: group.index_of(&g.b)?,
                    value: g.value.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut lambda: Vec<Option<Q>> = vec![None; doc.vectors.len()];
        for l in &doc.lambda {
            let slot = lambda
                .get_mut(l.vector_index)
                .ok_or_else(|| Error::Format(format!("lambda for missing vector {}", l.vector_index)))?;
            if slot.replace(l.value.clone()).is_some() {
                return Err(Error::Format(format!("two lambda values for vector {}", l.vector_index)));
            }
        }
        let lambda = lambda
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::Format(format!("no lambda for vector {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(EutaxyCertificate {
            group,
            branch: doc.branch,
            gamma,
            vectors: doc.vectors.clone(),
            lambda,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// Rank of the outer products of the minimal vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectionReport {
    pub group: String,
    pub rank: usize,
    /// `n(n-1)/2`, the dimension of symmetric operators on the span.
    pub target: usize,
    pub is_perfect: bool,
}

/// Exact rank of `{s s^T}` over the minimal vectors, each flattened to its
/// upper triangle. A modular rank is tried first: it is a lower bound, so if
/// it already reaches the target the rank is exact; otherwise the rank is
/// recomputed by fraction-free elimination over `Z`.
pub fn perfection_rank(group: &AbelianGroup) -> Result<PerfectionReport> {
    let n = group.order();
    if n < 2 {
        return Err(Error::EmptyLattice);
    }
    let vectors = lattice::min_vectors_any(group, 2)?;
    let rows: Vec<Vec<i64>> = vectors
        .iter()
        .filter(|v| v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0))
        .map(|s| {
            let mut row = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    row.push(s[i] * s[j]);
                }
            }
            row
        })
        .collect();
    let target = n * (n - 1) / 2;
    let mut rank = crate::linalg::rank_mod_p(&rows);
    if rank < target {
        rank = crate::linalg::rank_fraction_free(crate::linalg::to_big(&rows), Some(target));
    }
    if rank > target {
        return Err(Error::Consistency(format!(
            "outer products of minimal vectors of {group} have rank {rank} > {target}"
        )));
    }
    Ok(PerfectionReport {
        group: group.to_string(),
        rank,
        target,
        is_perfect: rank == target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalityReport {
    pub group: String,
    pub eutactic: bool,
    /// Why eutaxy failed, when it did.
    pub eutaxy_failure: Option<String>,
    pub perfection: PerfectionReport,
    pub extreme: bool,
}

impl ExtremalityReport {
    pub fn verdict(&self) -> &'static str {
        if self.extreme {
            "extreme"
        } else {
            "not extreme"
        }
    }
}

/// Voronoi: extreme iff eutactic and perfect.
pub fn extremality(group: &AbelianGroup) -> Result<ExtremalityReport> {
    let (eutactic, eutaxy_failure) = match build_certificate(group) {
        Ok(cert) => {
            let report = verify_certificate(&cert);
            match report.first_failure() {
                None => (true, None),
                Some(f) => (false, Some(f.to_string())),
            }
        }
        Err(e @ Error::NotEutactic(_)) => (false, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let perfection = perfection_rank(group)?;
    Ok(ExtremalityReport {
        group: group.to_string(),
        eutactic,
        eutaxy_failure,
        extreme: eutactic && perfection.is_perfect,
        perfection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn strong_scalars() {
        assert_eq!(strong_scalar(&grp("C5")).unwrap(), Some(q(40)));
        assert_eq!(strong_scalar(&grp("C2xC2")).unwrap(), Some(q(32)));
        assert_eq!(strong_scalar(&grp("C7")).unwrap(), Some(q(112)));
        assert_eq!(strong_scalar(&grp("C6")).unwrap(), None);
        assert!(sum_mm_star(&grp("C3")).unwrap().is_zero());
    }

    #[test]
    fn cross_sum_examples() {
        let a = grp("C4xC2");
        let s = a.squares_subgroup();
        assert_eq!(s.order(), 2);
        assert_eq!(cross_sum(&s).unwrap(), one_minus_idempotent(&s).scale(&q(96)));
        let c6 = grp("C6");
        let t = c6.torsion2_subgroup();
        assert_eq!(cross_sum(&t).unwrap(), one_minus_idempotent(&t).scale(&q(64)));
        assert!(cross_sum(&c6.torsion2_subgroup()).unwrap().augmentation().is_zero());
        assert!(cross_sum(&Subgroup::generated_by(&c6, &[])).is_err());
        assert!(cross_sum(&Subgroup::generated_by(&c6, &[1])).is_err());
    }

    #[test]
    fn classification() {
        for (s, want) in [("C5", true), ("C2xC2xC2", true), ("C4xC2", false), ("C6", false), ("C4", false)] {
            assert_eq!(classify_strong(&grp(s)).unwrap(), want, "{s}");
        }
        assert!(classify_strong(&grp("C3")).is_err());
    }

    #[test]
    fn c5_certificate() {
        let cert = build_certificate(&grp("C5")).unwrap();
        assert_eq!(cert.branch, Branch::OddStrong);
        assert_eq!(cert.gamma.len(), 8);
        assert!(cert.gamma.iter().all(|e| e.value == frac(1, 40)));
        assert!(cert.lambda.iter().all(|l| *l == frac(1, 10)));
        assert!(verify_certificate(&cert).passed());
    }

    #[test]
    fn small_group_certificates() {
        let c2 = build_certificate(&grp("C2")).unwrap();
        assert_eq!(c2.lambda, vec![frac(1, 16); 2]);
        assert!(verify_certificate(&c2).passed());
        let c3 = build_certificate(&grp("C3")).unwrap();
        assert_eq!(c3.lambda, vec![frac(1, 18); 6]);
        assert!(verify_certificate(&c3).passed());
    }

    #[test]
    fn mixed_certificates() {
        for s in ["C6", "C4xC2", "C8"] {
            let cert = build_certificate(&grp(s)).unwrap();
            assert_eq!(cert.branch, Branch::Mixed);
            let bound = frac(1, 4 * 6 * 2);
            if s == "C6" {
                assert!(cert.gamma.iter().all(|e| e.value.is_positive() && e.value <= bound));
            }
            let report = verify_certificate(&cert);
            assert!(report.passed(), "{s}: {:?}", report.first_failure());
        }
        assert!(matches!(build_certificate(&grp("C4")), Err(Error::NotEutactic(_))));
    }

    #[test]
    fn tampering_is_named() {
        let cert = build_certificate(&grp("C6")).unwrap();
        let mut t = cert.clone();
        t.gamma[0].value = -t.gamma[0].value.clone();
        assert_eq!(verify_certificate(&t).first_failure().unwrap().check, Check::Positivity);
        let mut t = cert.clone();
        t.lambda[3] = Q::zero();
        let f = verify_certificate(&t);
        assert!(f.first_failure().unwrap().to_string().starts_with("positivity violated"));
        let mut t = cert;
        t.gamma[1].value += frac(1, 1000);
        assert_eq!(verify_certificate(&t).first_failure().unwrap().check, Check::GroupRingIdentity);
    }

    #[test]
    fn json_roundtrip() {
        let cert = build_certificate(&grp("C3xC2")).unwrap();
        let back = EutaxyCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(cert.to_json().contains("\"verified\": true"));
    }

    #[test]
    fn perfection_examples() {
        let c7 = perfection_rank(&grp("C7")).unwrap();
        assert_eq!((c7.rank, c7.is_perfect), (21, true));
        let c8 = perfection_rank(&grp("C8")).unwrap();
        assert_eq!((c8.rank, c8.is_perfect), (28, true));
        let c42 = perfection_rank(&grp("C4xC2")).unwrap();
        assert!(c42.rank < 28 && !c42.is_perfect);
    }

    #[test]
    fn extremality_examples() {
        assert!(extremality(&grp("C7")).unwrap().extreme);
        let c42 = extremality(&grp("C4xC2")).unwrap();
        assert!(c42.eutactic && !c42.extreme);
        let c4 = extremality(&grp("C4")).unwrap();
        assert!(!c4.eutactic && !c4.extreme);
        assert_eq!(c4.verdict(), "not extreme");
    }
}
