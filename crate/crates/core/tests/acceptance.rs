//! Acceptance suite. Runs every criterion, prints one verdict line each and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use copartition_core::lab::{
    search_progressions, shipped_catalog, ProgressionClaim, Rhs, SeriesSource, Verdict, VerificationReport,
    Verifier, VerifyOptions,
};
use copartition_core::{
    count_copartitions, cp_gf_series, cp_special, enumerate_copartitions, eo_star_count, eo_star_series,
    euler_product, p_dissect_f, partition_numbers, pochhammer, ComponentKind, CopartitionCounter,
    CopartitionParams, Ring, Series, SpecialVariant,
};
use num_bigint::BigUint;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(a: u64, b: u64, m: u64) -> CopartitionParams {
    CopartitionParams::new(a, b, m).expect("valid parameters")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let p = params(1, 3, 4);
    let dp = count_copartitions(&p, 12);
    let series = cp_gf_series(&p, Ring::Integers, 12).map_err(err)?.coeffs()[12];
    let listed: BTreeSet<String> = enumerate_copartitions(&p, 12).iter().map(|t| t.to_string()).collect();
    let expected: BTreeSet<String> = [
        "({9,1^3},∅,∅)",
        "({5^2,1^2},∅,∅)",
        "({5,1^7},∅,∅)",
        "({1^12},∅,∅)",
        "({5},{4},{3})",
        "({1},{4},{7})",
        "(∅,∅,{3^4})",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    check(dp == BigUint::from(7u32), || format!("dynamic program gives {dp}"))?;
    check(series == 7, || format!("series gives {series}"))?;
    check(listed == expected, || format!("listing differs: {listed:?}"))?;
    Ok("cp(1,3,4)(12) = 7 by both engines, seven triples listed".into())
}

fn criterion_2() -> Outcome {
    let mut compared = 0usize;
    for a in 1..=3 {
        for b in 1..=3 {
            for m in 1..=6 {
                let p = params(a, b, m);
                let counter = CopartitionCounter::new(p, 40);
                for n in 0..=25 {
                    let listed = enumerate_copartitions(&p, n).len();
                    let dp = counter.count(n);
                    check(dp == BigUint::from(listed), || format!("{p} n={n}: dp {dp} vs listing {listed}"))?;
                    compared += 1;
                }
                let series = cp_gf_series(&p, Ring::Integers, 40).map_err(err)?;
                for n in 0..=40u64 {
                    let s = series.coeffs()[n as usize];
                    let dp = counter.count(n);
                    check(BigUint::try_from(s).ok() == Some(dp.clone()), || {
                        format!("{p} n={n}: series {s} vs dp {dp}")
                    })?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} comparisons, zero mismatches"))
}

fn criterion_3() -> Outcome {
    let cp111 = cp_gf_series(&params(1, 1, 1), Ring::Integers, 500).map_err(err)?;
    let convolution = cp_special(SpecialVariant::Cp111, 500).map_err(err)?;
    check(cp111.coeffs() == convolution.as_slice(), || {
        let n = (0..=500).find(|&i| cp111.coeffs()[i] != convolution[i]).unwrap_or(0);
        format!("cp(1,1,1) differs from partial sums of p at n={n}")
    })?;

    let cp011 = cp_special(SpecialVariant::Cp011, 200).map_err(err)?;
    let cp001 = cp_special(SpecialVariant::Cp001, 200).map_err(err)?;
    let p = partition_numbers(200).map_err(err)?;
    for n in 0..=200 {
        check(cp001[n] == 2 * cp011[n] - p[n], || format!("cp001 relation fails at n={n}"))?;
    }

    let p112 = params(1, 1, 2);
    let counter = CopartitionCounter::new(p112, 200);
    for n in 0..=15u64 {
        let listed = eo_star_count(2 * n as usize);
        let dp = counter.count(n);
        check(dp == BigUint::from(listed), || {
            format!("n={n}: cp(1,1,2)={dp} but EO*(2n)={listed} by listing")
        })?;
    }
    let eo = eo_star_series(400).map_err(err)?;
    let series = cp_gf_series(&p112, Ring::Integers, 200).map_err(err)?;
    for n in 0..=200usize {
        check(series.coeffs()[n] == eo.coeffs()[2 * n], || {
            format!("n={n}: cp(1,1,2)={} but nu gives {}", series.coeffs()[n], eo.coeffs()[2 * n])
        })?;
    }
    Ok("cp(1,1,1) to 500, cp001 relation to 200, EO*(2n) by listing to 15 and by nu to 200".into())
}

fn pentagonal(truncation: usize) -> Series {
    let mut c = vec![0i128; truncation + 1];
    for k in -100i64..=100 {
        let e = k * (3 * k - 1) / 2;
        if (e as usize) <= truncation {
            c[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    Series::from_coeffs(Ring::Integers, c)
}

fn criterion_4() -> Outcome {
    let n = 2000;
    let f1 = pochhammer(1, 1, Ring::Integers, n).map_err(err)?;
    check(f1 == pentagonal(n), || "pochhammer(1,1) is not the pentagonal series".into())?;
    for p in [5u64, 7, 11, 13] {
        let d = p_dissect_f(p, Ring::Integers, n).map_err(err)?;
        check(d.reassembled == f1, || format!("p={p}: components do not sum to f1"))?;
        let residual = d
            .components
            .iter()
            .find(|c| c.kind == ComponentKind::Residual)
            .ok_or_else(|| format!("p={p}: no residual component"))?;
        for c in &d.components {
            if c.kind != ComponentKind::Residual {
                check(c.residue_class() != residual.residue_class(), || {
                    format!("p={p}: {:?} shares the residual class", c.kind)
                })?;
            }
            let e = c.expand(Ring::Integers, n).map_err(err)?;
            let stray =
                e.coeffs().iter().enumerate().find(|&(i, &v)| v != 0 && i as u64 % p != c.residue_class());
            check(stray.is_none(), || format!("p={p}: {:?} has a term outside its class", c.kind))?;
        }
    }
    Ok("pentagonal series and dissections for p = 5, 7, 11, 13 at N = 2000".into())
}

fn criterion_5() -> Outcome {
    let n = 500;
    let mut pairs = 0;
    for (prime, ring) in [(2usize, Ring::Residues(2)), (3, Ring::Residues(3))] {
        for k in 1..=4usize {
            for m in 1..=5u32 {
                let left = euler_product(prime * k, ring, n).map_err(err)?.pow(m).map_err(err)?;
                let right = euler_product(k, ring, n).map_err(err)?.pow(prime as u32 * m).map_err(err)?;
                check(left == right, || {
                    format!("f_{}^{m} vs f_{k}^{} mod {prime}", prime * k, prime as u32 * m)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} congruences to N = {n}"))
}

fn definitive(r: &VerificationReport) -> Result<(), String> {
    check(r.verdict != Verdict::Vacuous, || format!("{}: vacuous", r.claim.provenance))?;
    check(r.engines_agree, || format!("{}: exact engine disagrees", r.claim.provenance))?;
    if r.verdict == Verdict::Fail {
        check(!r.counterexamples.is_empty(), || format!("{}: FAIL without evidence", r.claim.provenance))?;
        for cx in &r.counterexamples {
            check(cx.confirmed == Some(true), || {
                format!("{}: counterexample at {} not reproduced exactly", r.claim.provenance, cx.index)
            })?;
        }
    }
    Ok(())
}

fn wide_verifier() -> Verifier {
    Verifier::new(VerifyOptions { horizon: 10_000, ..VerifyOptions::default() })
}

fn criterion_6(verifier: &Verifier) -> Outcome {
    let claims: Vec<ProgressionClaim> = ["cp(3,1,4); 1n+0; mod 2; f1^5", "cp(5,1,6); 1n+0; mod 2; f1*f3"]
        .iter()
        .map(|s| s.parse().map_err(err))
        .collect::<Result<_, _>>()?;
    for claim in &claims {
        let r = verifier.verify(claim).map_err(err)?;
        check(r.verdict == Verdict::Pass && r.n_checked == 10_001, || {
            format!("{claim}: {:?} with {} failures", r.verdict, r.failures)
        })?;
        check(r.spot_checks.len() == 10 && r.spot_checks.iter().all(|s| s.agrees), || {
            format!("{claim}: spot checks {:?}", r.spot_checks)
        })?;
    }
    Ok("both controls hold to n = 10000 with 10 exact spot checks each".into())
}

fn fixed(
    a: u64,
    b: u64,
    m: u64,
    step: u64,
    residues: &[u64],
    label: &str,
) -> Result<Vec<ProgressionClaim>, String> {
    residues
        .iter()
        .map(|&r| {
            ProgressionClaim::new(
                SeriesSource::copartition(params(a, b, m)),
                step,
                r as i64,
                2,
                Rhs::Zero,
                format!("{label} r={r}"),
            )
            .map_err(err)
        })
        .collect()
}

fn criterion_7(verifier: &Verifier) -> Outcome {
    let mut claims = fixed(3, 1, 4, 49, &[3, 17, 24, 31, 38, 45], "cp(3,1,4) step 49")?;
    claims.extend(fixed(5, 1, 6, 25, &[9, 14, 19, 24], "cp(5,1,6) step 25")?);
    claims.extend(fixed(5, 1, 6, 121, &[9, 31, 42, 53, 64, 75, 86, 97, 108, 119], "cp(5,1,6) step 121")?);
    let reports = verifier.verify_all(&claims).map_err(err)?;
    let mut failures = Vec::new();
    for r in &reports {
        definitive(r)?;
        if r.verdict != Verdict::Pass {
            let cx = &r.counterexamples[0];
            let listed = if cx.index <= 60 {
                let p = r.claim.source.copartition_params().expect("copartition source");
                format!(", listing gives {}", enumerate_copartitions(&p, cx.index).len())
            } else {
                String::new()
            };
            failures.push(format!(
                "{}: first failure at index {} (exact {}){listed}",
                r.claim.provenance,
                cx.index,
                cx.lhs_exact.as_deref().unwrap_or("?")
            ));
        }
    }
    check(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} claims PASS at horizon 10^4", reports.len()))
}

fn find<'a>(reports: &'a [VerificationReport], provenance: &str) -> Result<&'a VerificationReport, String> {
    reports
        .iter()
        .find(|r| r.claim.provenance == provenance)
        .ok_or_else(|| format!("catalog has no entry {provenance}"))
}

fn expect_first_failure(
    reports: &[VerificationReport],
    provenance: &str,
    n: u64,
    lhs_exact: &str,
    rhs: u64,
) -> Result<(), String> {
    let r = find(reports, provenance)?;
    let cx = r.counterexamples.first().ok_or_else(|| format!("{provenance}: expected a failure"))?;
    check(
        r.verdict == Verdict::Fail
            && cx.n == n
            && cx.lhs_exact.as_deref() == Some(lhs_exact)
            && cx.rhs == rhs,
        || format!("{provenance}: first failure {cx:?}"),
    )
}

fn criterion_8() -> Outcome {
    let catalog = shipped_catalog();
    let verifier = Verifier::new(VerifyOptions::default());
    let reports = verifier.verify_all(&catalog).map_err(err)?;
    let mut cross_checked = 0;
    for r in &reports {
        definitive(r)?;
        let Some(p) = r.claim.source.copartition_params() else { continue };
        for cx in r.counterexamples.iter().filter(|cx| cx.index <= 60) {
            let listed = enumerate_copartitions(&p, cx.index).len().to_string();
            check(cx.lhs_exact.as_deref() == Some(listed.as_str()), || {
                format!("{}: index {} listing gives {listed}", r.claim.provenance, cx.index)
            })?;
            cross_checked += 1;
        }
    }
    // f1^4 has -4 at q^1, which is 2 mod 6
    expect_first_failure(&reports, "cp516-lift p=5 alpha=0", 1, "1", 2)?;
    expect_first_failure(&reports, "cp314-lift p=5 alpha=1", 0, "2", 1)?;
    expect_first_failure(&reports, "cp314-nonresidue-vanishing p=7 alpha=0 j=4", 0, "1", 0)?;
    let fails = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    Ok(format!(
        "{} entries adjudicated ({} PASS, {fails} FAIL), every counterexample reproduced exactly, {cross_checked} also by listing",
        reports.len(),
        reports.len() - fails
    ))
}

fn criterion_9(verifier: &Verifier) -> Outcome {
    let residues = [3, 14, 36, 47, 58, 69, 80, 91, 102, 113];
    let mut claims = fixed(3, 1, 4, 49, &residues, "step 49 as printed")?;
    claims.extend(fixed(3, 1, 4, 121, &residues, "step 121 reading")?);
    let reports = verifier.verify_all(&claims).map_err(err)?;
    let mut summary = Vec::new();
    for (label, chunk) in ["49k+r", "121k+r"].iter().zip(reports.chunks(residues.len())) {
        let mut line = Vec::new();
        for r in chunk {
            definitive(r)?;
            let v = if r.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
            line.push(format!("{}:{v}", r.start));
        }
        summary.push(format!("{label} [{}]", line.join(" ")));
    }
    Ok(summary.join("; "))
}

fn criterion_10() -> Outcome {
    let cp516 = cp_gf_series(&params(5, 1, 6), Ring::Residues(2), 3000).map_err(err)?;
    let hits = search_progressions(&cp516, 2, 25..=25, 20).map_err(err)?;
    let found: BTreeSet<u64> = hits.iter().map(|c| c.offset).collect();
    check(found == BTreeSet::from([9, 14, 19, 24]), || format!("cp(5,1,6) step 25 gives {found:?}"))?;

    let cp314 = cp_gf_series(&params(3, 1, 4), Ring::Residues(2), 10_000).map_err(err)?;
    let hits = search_progressions(&cp314, 2, 49..=49, 20).map_err(err)?;
    let found49: BTreeSet<u64> = hits.iter().map(|c| c.offset).collect();
    let wanted = BTreeSet::from([3, 17, 24, 31, 38, 45]);
    check(found49.is_superset(&wanted), || format!("cp(3,1,4) step 49 gives {found49:?}"))?;
    Ok(format!("step 25 offsets {found:?}, step 49 offsets {found49:?}"))
}

fn main() -> ExitCode {
    let verifier = wide_verifier();
    let criteria: Vec<Criterion> = vec![
        (1, "worked example", Duration::from_secs(1), Box::new(criterion_1)),
        (2, "engine equivalence", Duration::from_secs(60), Box::new(criterion_2)),
        (3, "identity suite", Duration::from_secs(60), Box::new(criterion_3)),
        (4, "pentagonal series and dissection", Duration::from_secs(60), Box::new(criterion_4)),
        (5, "parity lemmas", Duration::MAX, Box::new(criterion_5)),
        (6, "positive controls", Duration::from_secs(60), Box::new(|| criterion_6(&verifier))),
        (7, "fixed-residue claims", Duration::MAX, Box::new(|| criterion_7(&verifier))),
        (8, "catalog adjudication", Duration::MAX, Box::new(criterion_8)),
        (9, "49 versus 121 reading", Duration::MAX, Box::new(|| criterion_9(&verifier))),
        (10, "search rediscovery", Duration::from_secs(120), Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => {
                Err(format!("{detail}, but took {elapsed:.2?} (limit {budget:?})"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} ({elapsed:.2?})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria fail");
        ExitCode::FAILURE
    }
}
