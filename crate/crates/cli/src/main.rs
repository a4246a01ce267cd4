//! `abelat`: lattices from finite abelian groups on the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 the request is
//! impossible for the group (the `C4` cases), 3 a verification failed.

mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abelat::basis::{default_orbit_partner, general_min_basis, sha_basis, single_orbit_basis, MinimalBasis};
use abelat::eutaxy::{build_certificate, verify_certificate, EutaxyCertificate};
use abelat::group::{abelian_group_types, presentations};
use abelat::lattice;
use abelat::{AbelianGroup, Error};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{analyze_group, AnalysisReport, SweepRow};

#[derive(Parser)]
#[command(name = "abelat", version, about = "Lattices (ΔA)^2 of finite abelian groups: minimal vectors, bases, eutaxy and perfection")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Treat a non-eutactic lattice or a missing minimal basis as an error (exit 2).
    #[arg(long, global = true)]
    strict: bool,

    /// Largest group order any command will accept.
    #[arg(long, global = true, default_value_t = 16, value_name = "N")]
    max_order: usize,

    /// Minimal-basis construction used by `basis`.
    #[arg(long, global = true, value_enum, default_value_t = ConstructionArg::General)]
    construction: ConstructionArg,

    /// In `sweep`, run every ordering of the invariant factors and of the
    /// elementary divisors, not just one presentation per type.
    #[arg(long, global = true)]
    all_presentations: bool,

    /// Add per-stage wall-clock timings to `analyze` output.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    General,
    Sha,
    Orbit,
}

#[derive(Subcommand)]
enum Command {
    /// Kissing number, minimum, eutaxy, perfection and extremality of one group.
    Analyze { spec: String },
    /// CSV table (JSON with --json) of `analyze` over all groups up to an order.
    Sweep {
        #[arg(value_name = "MAX_ORDER")]
        up_to: usize,
    },
    /// A basis of minimal vectors, as JSON.
    Basis { spec: String },
    /// The minimal vectors of (ΔA)^r.
    Minvecs {
        spec: String,
        #[arg(long, default_value_t = 2)]
        power: u32,
    },
    /// Build, verify and emit a eutaxy certificate.
    Certificate {
        spec: String,
        /// Write the certificate here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate file.
    Verify { path: PathBuf },
}

enum Failure {
    Usage(String),
    Impossible(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Impossible(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Impossible(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotEutactic(_) | Error::NoMinimalBasis(_) => Failure::Impossible(e.to_string()),
            Error::Consistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { spec } => analyze(cli, spec),
        Command::Sweep { up_to } => sweep(cli, *up_to),
        Command::Basis { spec } => basis(cli, spec),
        Command::Minvecs { spec, power } => minvecs(cli, spec, *power),
        Command::Certificate { spec, out } => certificate(cli, spec, out.as_ref()),
        Command::Verify { path } => verify(cli, path),
    }
}

fn group(cli: &Cli, spec: &str) -> Result<AbelianGroup, Failure> {
    let g: AbelianGroup = spec.parse()?;
    if g.order() > cli.max_order {
        return Err(Failure::Usage(format!(
            "{g} has order {} above the limit {} (raise --max-order)",
            g.order(),
            cli.max_order
        )));
    }
    if g.is_trivial() {
        return Err(Error::EmptyLattice.into());
    }
    Ok(g)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn analyze(cli: &Cli, spec: &str) -> Outcome {
    let g = group(cli, spec)?;
    let report = analyze_group(&g, cli.timings)?;
    if cli.strict {
        if !report.eutactic {
            return Err(Error::NotEutactic(report.group).into());
        }
        if !report.minimal_basis {
            return Err(Error::NoMinimalBasis(report.group).into());
        }
    }
    Ok(if cli.json { to_json(&report) } else { report.to_text() })
}

fn sweep(cli: &Cli, max_order: usize) -> Outcome {
    if max_order > cli.max_order {
        return Err(Failure::Usage(format!(
            "sweep up to order {max_order} exceeds the limit {} (raise --max-order)",
            cli.max_order
        )));
    }
    let mut groups = Vec::new();
    for n in 2..=max_order as u64 {
        for factors in abelian_group_types(n) {
            let shown = if cli.all_presentations { presentations(&factors) } else { vec![factors] };
            for f in shown {
                groups.push(AbelianGroup::new(f)?);
            }
        }
    }
    let reports: Vec<AnalysisReport> = groups
        .par_iter()
        .map(|g| analyze_group(g, false))
        .collect::<Result<_, _>>()?;
    if cli.json {
        return Ok(to_json(&reports));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &reports {
        w.serialize(SweepRow::from(r)).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn basis(cli: &Cli, spec: &str) -> Outcome {
    let g = group(cli, spec)?;
    if g.order() == 4 && g.is_cyclic() {
        return Err(Error::NoMinimalBasis(g.to_string()).into());
    }
    let mb: MinimalBasis = match cli.construction {
        ConstructionArg::General => general_min_basis(&g)?,
        ConstructionArg::Sha => sha_basis(&g)?,
        ConstructionArg::Orbit => {
            if !g.is_cyclic() {
                return Err(Failure::Usage(format!("the single-orbit basis needs a cyclic group, got {g}")));
            }
            let a = g.factor_generator(0);
            single_orbit_basis(&g, a, default_orbit_partner(&g, a))?
        }
    };
    Ok(to_json(&mb.to_doc()))
}

#[derive(Serialize)]
struct MinvecsDoc {
    group: String,
    power: u32,
    squared_minimum: i64,
    count: usize,
    vectors: Vec<Vec<i64>>,
}

fn minvecs(cli: &Cli, spec: &str, power: u32) -> Outcome {
    let g = group(cli, spec)?;
    let vectors = lattice::min_vectors_any(&g, power)?;
    let squared_minimum = vectors.first().map_or(0, |v| v.iter().map(|x| x * x).sum());
    let doc = MinvecsDoc {
        group: g.to_string(),
        power,
        squared_minimum,
        count: vectors.len(),
        vectors,
    };
    if cli.json {
        return Ok(to_json(&doc));
    }
    let mut out = format!(
        "# {} vectors of squared norm {} in (ΔA)^{} for {}\n",
        doc.count, doc.squared_minimum, doc.power, doc.group
    );
    for v in &doc.vectors {
        let cells: Vec<String> = v.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    Ok(out)
}

fn certificate(cli: &Cli, spec: &str, out: Option<&PathBuf>) -> Outcome {
    let g = group(cli, spec)?;
    let cert = build_certificate(&g)?;
    let report = verify_certificate(&cert);
    let json = {
        let mut s = serde_json::to_string_pretty(&cert.to_doc(report.passed())).expect("serializable");
        s.push('\n');
        s
    };
    if let Some(f) = report.first_failure() {
        return Err(Failure::Verification(format!("certificate for {g} failed: {f}")));
    }
    match out {
        Some(path) => {
            fs::write(path, &json).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(if cli.json {
                to_json(&serde_json::json!({ "group": g.to_string(), "branch": cert.branch, "path": path, "verified": true }))
            } else {
                format!("wrote {} certificate for {g} to {}\n", cert.branch, path.display())
            })
        }
        None => Ok(json),
    }
}

#[derive(Serialize)]
struct CheckDoc {
    check: String,
    passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
}

fn verify(cli: &Cli, path: &PathBuf) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = EutaxyCertificate::from_json(&text)?;
    if cert.group.order() > cli.max_order {
        return Err(Failure::Usage(format!(
            "certificate group {} is above the order limit {} (raise --max-order)",
            cert.group, cli.max_order
        )));
    }
    let report = verify_certificate(&cert);
    let out = if cli.json {
        let checks: Vec<CheckDoc> = report
            .checks
            .iter()
            .map(|c| CheckDoc { check: c.check.to_string(), passed: c.passed, detail: c.detail.clone() })
            .collect();
        to_json(&serde_json::json!({
            "group": cert.group.to_string(),
            "branch": cert.branch,
            "checks": checks,
            "verified": report.passed(),
        }))
    } else {
        let mut s = format!("certificate for {} ({})\n", cert.group, cert.branch);
        for c in &report.checks {
            s.push_str(&format!("  {c}\n"));
        }
        s
    };
    match report.first_failure() {
        None => Ok(out),
        Some(f) => {
            print!("{out}");
            Err(Failure::Verification(f.to_string()))
        }
    }
}
