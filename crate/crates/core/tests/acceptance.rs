//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use abelat::basis::{self, default_orbit_partner, general_min_basis, sha_basis, single_orbit_basis};
use abelat::enumeration::{minimum, short_vector_oracle};
use abelat::eutaxy::{
    build_certificate, classify_strong, extremality, perfection_rank, strong_scalar, sum_mm_star,
    sum_mm_star_closed_form, verify_certificate, Check,
};
use abelat::group::{abelian_group_types, presentations};
use abelat::lattice::{self, canonical_basis, kissing_count, membership, minimal_vectors};
use abelat::oracle::quadruple_vectors;
use abelat::rational::{frac, q};
use abelat::{AbelianGroup, Error};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn groups(lo: u64, hi: u64) -> Vec<AbelianGroup> {
    (lo..=hi)
        .flat_map(abelian_group_types)
        .map(|f| AbelianGroup::new(f).unwrap())
        .collect()
}

fn grp(s: &str) -> AbelianGroup {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn square_lattice_is_kernel() -> Outcome {
    for a in groups(2, 16) {
        let l = canonical_basis(&a, 2).map_err(|e| e.to_string())?;
        ensure(l.rank() == a.order() - 1, || format!("{a}: rank {}", l.rank()))?;
        for b in l.basis() {
            ensure(membership(b), || format!("{a}: basis vector {b} outside Ker psi ∩ ΔA"))?;
        }
        let (rank, diag) = lattice::augmentation_quotient(&a);
        let index: BigInt = diag.iter().product();
        ensure(rank == a.order() - 1 && index == BigInt::from(a.order()), || {
            format!("{a}: [ΔA : (ΔA)^2] = {index} (rank {rank})")
        })?;
        let det = l.determinant();
        ensure(det == BigInt::from(a.order()).pow(3), || format!("{a}: det Gram {det}"))?;
    }
    Ok(())
}

fn minimal_vector_parametrization() -> Outcome {
    for a in groups(4, 16) {
        let mv = minimal_vectors(&a).map_err(|e| e.to_string())?;
        ensure(mv.iter().all(|m| m.triples.len() == 4), || format!("{a}: triple count"))?;
        let param: BTreeSet<Vec<i64>> = mv.iter().map(|m| m.coeffs.clone()).collect();
        ensure(param == quadruple_vectors(&a), || format!("{a}: parametrization differs from quadruple oracle"))?;
        ensure(param.len() as i64 == kissing_count(&a), || {
            format!("{a}: {} vectors, closed form {}", param.len(), kissing_count(&a))
        })?;
        let l = canonical_basis(&a, 2).map_err(|e| e.to_string())?;
        let enumerated: BTreeSet<Vec<i64>> = short_vector_oracle(&l, &q(4))
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        ensure(enumerated == param, || format!("{a}: enumeration finds {} norm-4 vectors", enumerated.len()))?;
    }
    ensure(kissing_count(&grp("C4")) == 4, || "C4 kissing count".into())?;
    ensure(kissing_count(&grp("C6")) == 24, || "C6 kissing count".into())
}

fn minimum_distance_table() -> Outcome {
    for a in groups(2, 16) {
        let l = canonical_basis(&a, 2).map_err(|e| e.to_string())?;
        let (min, _) = minimum(&l).map_err(|e| e.to_string())?;
        let want = match a.order() {
            2 => 8,
            3 => 6,
            _ => 4,
        };
        ensure(min == want, || format!("{a}: enumerated minimum {min}, expected {want}"))?;
        ensure(lattice::min_distance(&a, 2) == Ok(min), || format!("{a}: table disagrees"))?;
    }
    for (spec, r, want) in [("C6", 3, 4), ("C7", 2, 4), ("C7", 3, 6)] {
        let l = canonical_basis(&grp(spec), r).map_err(|e| e.to_string())?;
        let (min, _) = minimum(&l).map_err(|e| e.to_string())?;
        ensure(min == want, || format!("(Δ{spec})^{r}: minimum {min}, expected {want}"))?;
    }
    Ok(())
}

fn minimal_bases() -> Outcome {
    let mut targets = vec![grp("C2xC2")];
    targets.extend(groups(5, 16));
    for a in targets {
        let mb = general_min_basis(&a).map_err(|e| format!("{a}: {e}"))?;
        ensure(mb.vectors.len() == a.order() - 1 && mb.norms.iter().all(|&n| n == 4), || {
            format!("{a}: norms {:?}", mb.norms)
        })?;
        ensure(mb.determinant.abs().is_one(), || format!("{a}: det {}", mb.determinant))?;
    }
    for n in 5..=16u64 {
        let a = AbelianGroup::cyclic(n).unwrap();
        let sha = sha_basis(&a).map_err(|e| format!("C{n}: {e}"))?;
        ensure(sha.all_minimal && sha.determinant.abs().is_one(), || format!("C{n}: sha basis"))?;
        let g = a.factor_generator(0);
        let orbit = single_orbit_basis(&a, g, default_orbit_partner(&a, g)).map_err(|e| format!("C{n}: {e}"))?;
        ensure(orbit.determinant.abs().is_one() && orbit.vectors.len() == n as usize - 1, || {
            format!("C{n}: single-orbit basis")
        })?;
        let b = a.pow_idx(g, 2);
        if a.element_order(b) == n {
            let orbit = single_orbit_basis(&a, g, b).map_err(|e| e.to_string())?;
            ensure(orbit.all_minimal, || format!("C{n}: single orbit with b = a^2 not minimal"))?;
        }
    }
    ensure(matches!(general_min_basis(&grp("C4")), Err(Error::NoMinimalBasis(_))), || {
        "C4 did not raise NoMinimalBasis".into()
    })?;
    ensure(basis::verify_unimodular(&[], &canonical_basis(&grp("C2"), 2).unwrap()).is_err(), || {
        "empty candidate accepted".into()
    })
}

fn closed_form_sum() -> Outcome {
    let mut all = vec![AbelianGroup::trivial()];
    for f in (2..=16).flat_map(abelian_group_types) {
        for p in presentations(&f) {
            all.push(AbelianGroup::new(p).unwrap());
        }
    }
    for a in all {
        let direct = sum_mm_star(&a).map_err(|e| e.to_string())?;
        ensure(direct == sum_mm_star_closed_form(&a), || format!("{a}: closed form mismatch"))?;
    }
    Ok(())
}

fn strong_eutaxy() -> Outcome {
    for a in groups(4, 16) {
        let verdict = classify_strong(&a).map_err(|e| e.to_string())?;
        let definitional = strong_scalar(&a).map_err(|e| e.to_string())?.is_some();
        ensure(verdict == definitional, || format!("{a}: classification disagrees with definition"))?;
    }
    for (spec, want) in [
        ("C5", true),
        ("C7", true),
        ("C9", true),
        ("C3xC3", true),
        ("C2xC2", true),
        ("C2xC2xC2", true),
        ("C2xC2xC2xC2", true),
        ("C6", false),
        ("C8", false),
        ("C4xC2", false),
        ("C12", false),
    ] {
        let got = classify_strong(&grp(spec)).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{spec}: strong = {got}"))?;
    }
    ensure(strong_scalar(&grp("C5")).unwrap() == Some(q(40)), || "C5 scalar".into())?;
    ensure(strong_scalar(&grp("C2xC2")).unwrap() == Some(q(32)), || "C2xC2 scalar".into())
}

fn certificate_targets() -> Vec<AbelianGroup> {
    let mut v = vec![grp("C2"), grp("C3"), grp("C2xC2")];
    v.extend(groups(5, 16));
    v
}

fn eutaxy_certificates() -> Outcome {
    for a in certificate_targets() {
        let cert = build_certificate(&a).map_err(|e| format!("{a}: {e}"))?;
        ensure(cert.lambda.iter().all(|l| l > &q(0)), || format!("{a}: nonpositive lambda"))?;
        let report = verify_certificate(&cert);
        if let Some(f) = report.first_failure() {
            return Err(format!("{a}: {f}"));
        }
    }
    let c2 = build_certificate(&grp("C2")).unwrap();
    ensure(c2.lambda.iter().all(|l| *l == frac(1, 16)), || "C2 lambda".into())?;
    let c3 = build_certificate(&grp("C3")).unwrap();
    ensure(c3.lambda.iter().all(|l| *l == frac(1, 18)), || "C3 lambda".into())?;
    ensure(matches!(build_certificate(&grp("C4")), Err(Error::NotEutactic(_))), || {
        "C4 did not raise NotEutactic".into()
    })
}

fn perfection_and_extremality() -> Outcome {
    for (spec, rank) in [("C7", 21), ("C8", 28), ("C3xC3", 36)] {
        let r = perfection_rank(&grp(spec)).map_err(|e| e.to_string())?;
        ensure(r.rank == rank && r.is_perfect, || format!("{spec}: rank {} of {}", r.rank, r.target))?;
    }
    let r = perfection_rank(&grp("C4xC2")).map_err(|e| e.to_string())?;
    ensure(r.rank < 28 && !r.is_perfect, || format!("C4xC2: rank {}", r.rank))?;
    for a in groups(7, 16) {
        let e = extremality(&a).map_err(|e| e.to_string())?;
        let want = a.invariant_factors() != [4, 2];
        ensure(e.extreme == want, || {
            format!("{a}: {} (eutactic {}, rank {}/{})", e.verdict(), e.eutactic, e.perfection.rank, e.perfection.target)
        })?;
    }
    Ok(())
}

fn tamper_suite() -> Outcome {
    let mut detected = 0;
    let mut total = 0;
    for a in certificate_targets() {
        let cert = build_certificate(&a).map_err(|e| e.to_string())?;
        let mut flipped = cert.clone();
        flipped.gamma[0].value = -flipped.gamma[0].value.clone();
        let mut zeroed = cert.clone();
        let last = zeroed.lambda.len() - 1;
        zeroed.lambda[last] = Zero::zero();
        let mut perturbed = cert.clone();
        perturbed.gamma[0].value += frac(1, 997);
        for (name, t, want) in [
            ("sign flip", flipped, Check::Positivity),
            ("zeroed lambda", zeroed, Check::Positivity),
            ("perturbed gamma", perturbed, Check::GroupRingIdentity),
        ] {
            total += 1;
            let report = verify_certificate(&t);
            match report.first_failure() {
                Some(f) if f.check == want => detected += 1,
                other => return Err(format!("{a} {name}: got {other:?}")),
            }
        }
    }
    ensure(detected == total, || format!("{detected}/{total} detected"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("square lattice equals Ker psi ∩ ΔA, index |A|", square_lattice_is_kernel, 10),
        ("minimal-vector parametrization and kissing count", minimal_vector_parametrization, 30),
        ("minimum distance table", minimum_distance_table, 60),
        ("minimal bases", minimal_bases, 10),
        ("closed form of the sum over Omega", closed_form_sum, 30),
        ("strong eutaxy classification", strong_eutaxy, 30),
        ("eutaxy certificates", eutaxy_certificates, 120),
        ("perfection and extremality", perfection_and_extremality, 120),
        ("tamper detection", tamper_suite, 10),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < Duration::from_secs(*limit), || format!("took {elapsed:.2?}, limit {limit} s"))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
