use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use abelat::basis::general_min_basis;
use abelat::enumeration;
use abelat::eutaxy::{build_certificate, classify_strong, perfection_rank, verify_certificate};
use abelat::lattice::{self, canonical_basis, kissing_count};
use abelat::oracle::quadruple_vectors;
use abelat::{AbelianGroup, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub minimal_vectors_us: u64,
    pub eutaxy_us: u64,
    pub perfection_us: u64,
    pub basis_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub group: String,
    pub order: usize,
    pub kissing: usize,
    pub squared_minimum: i64,
    /// Only classified for `|A| >= 4`.
    pub strongly_eutactic: Option<bool>,
    pub eutactic: bool,
    pub minimal_basis: bool,
    pub perfection_rank: usize,
    pub perfection_target: usize,
    pub perfect: bool,
    pub extreme: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// One row of the CSV sweep table; `AnalysisReport` without timings.
#[derive(Serialize)]
pub struct SweepRow<'a> {
    pub group: &'a str,
    pub order: usize,
    pub kissing: usize,
    pub squared_minimum: i64,
    pub strongly_eutactic: Option<bool>,
    pub eutactic: bool,
    pub minimal_basis: bool,
    pub perfection_rank: usize,
    pub perfection_target: usize,
    pub perfect: bool,
    pub extreme: bool,
}

impl<'a> From<&'a AnalysisReport> for SweepRow<'a> {
    fn from(r: &'a AnalysisReport) -> Self {
        SweepRow {
            group: &r.group,
            order: r.order,
            kissing: r.kissing,
            squared_minimum: r.squared_minimum,
            strongly_eutactic: r.strongly_eutactic,
            eutactic: r.eutactic,
            minimal_basis: r.minimal_basis,
            perfection_rank: r.perfection_rank,
            perfection_target: r.perfection_target,
            perfect: r.perfect,
            extreme: r.extreme,
        }
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros().try_into().unwrap_or(u64::MAX)
}

fn mismatch(group: &AbelianGroup, what: &str) -> Error {
    Error::Consistency(format!("{group}: {what}"))
}

/// Runs every analysis on `group`, with the formula-versus-oracle cross
/// checks. `NotEutactic` and `NoMinimalBasis` are reported as `false`, not
/// as errors.
pub fn analyze_group(group: &AbelianGroup, timed: bool) -> Result<AnalysisReport> {
    let n = group.order();

    let start = Instant::now();
    let vectors = lattice::min_vectors_any(group, 2)?;
    let reference = canonical_basis(group, 2)?;
    let (enumerated_min, enumerated) = enumeration::minimum(&reference)?;
    let squared_minimum = lattice::min_distance(group, 2)?;
    if enumerated_min != squared_minimum || enumerated != vectors {
        return Err(mismatch(group, "short-vector enumeration disagrees with the minimal vectors"));
    }
    if n >= 4 {
        let oracle: BTreeSet<Vec<i64>> = quadruple_vectors(group);
        if oracle.len() != vectors.len() || !vectors.iter().all(|v| oracle.contains(v)) {
            return Err(mismatch(group, "quadruple oracle disagrees with the parametrization"));
        }
        if kissing_count(group) != vectors.len() as i64 {
            return Err(mismatch(group, "kissing number disagrees with its closed form"));
        }
    }
    let minimal_vectors_us = micros(start);

    let start = Instant::now();
    let strongly_eutactic = if n >= 4 { Some(classify_strong(group)?) } else { None };
    let eutactic = match build_certificate(group) {
        Ok(cert) => verify_certificate(&cert).passed(),
        Err(Error::NotEutactic(_)) => false,
        Err(e) => return Err(e),
    };
    let eutaxy_us = micros(start);

    let start = Instant::now();
    let perfection = perfection_rank(group)?;
    let perfection_us = micros(start);

    let start = Instant::now();
    let minimal_basis = match general_min_basis(group) {
        Ok(_) => true,
        Err(Error::NoMinimalBasis(_)) => false,
        Err(e) => return Err(e),
    };
    let basis_us = micros(start);

    Ok(AnalysisReport {
        group: group.to_string(),
        order: n,
        kissing: vectors.len(),
        squared_minimum,
        strongly_eutactic,
        eutactic,
        minimal_basis,
        perfection_rank: perfection.rank,
        perfection_target: perfection.target,
        perfect: perfection.is_perfect,
        extreme: eutactic && perfection.is_perfect,
        timings: timed.then_some(Timings {
            minimal_vectors_us,
            eutaxy_us,
            perfection_us,
            basis_us,
        }),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k:<20}{v}");
        };
        line("group", self.group.clone());
        line("order", self.order.to_string());
        line("kissing", self.kissing.to_string());
        line("squared minimum", self.squared_minimum.to_string());
        line(
            "strongly eutactic",
            self.strongly_eutactic.map_or("n/a", yes_no).to_string(),
        );
        line("eutactic", yes_no(self.eutactic).into());
        line("minimal basis", yes_no(self.minimal_basis).into());
        line(
            "perfection rank",
            format!("{}/{}", self.perfection_rank, self.perfection_target),
        );
        line("perfect", yes_no(self.perfect).into());
        line(
            "extremality",
            if self.extreme { "extreme" } else { "not extreme" }.into(),
        );
        if let Some(t) = &self.timings {
            line(
                "timings (us)",
                format!(
                    "minvecs {}, eutaxy {}, perfection {}, basis {}",
                    t.minimal_vectors_us, t.eutaxy_us, t.perfection_us, t.basis_us
                ),
            );
        }
        out
    }
}
