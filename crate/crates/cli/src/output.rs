//! Rendering of command results. Every function is deterministic in its input.

use std::fmt::Write as _;

use copartition_core::lab::{Candidate, ProgressionClaim, SeriesSource, Verdict, VerificationReport};
use copartition_core::{CopartitionParams, CopartitionTriple};

use crate::commands::Format;

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Vacuous => "VACUOUS",
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn coefficients(source: &str, modulus: u64, values: &[String], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("n,value\n");
            for (n, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{n},{v}");
            }
        }
        // values are decimal integers, valid JSON numbers at any size
        Format::Json => {
            let _ = writeln!(
                s,
                "{{\"source\": {}, \"modulus\": {modulus}, \"values\": [{}]}}",
                serde_json::to_string(source).expect("string serializes"),
                values.join(", ")
            );
        }
        Format::Text => {
            for (n, v) in values.iter().enumerate() {
                let _ = writeln!(s, "{n:>6} {v}");
            }
        }
    }
    s
}

pub fn triples(params: &CopartitionParams, n: u64, triples: &[CopartitionTriple], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            for t in triples {
                let _ = writeln!(s, "{t}    w={} s={}", t.ground_parts(), t.sky_parts());
            }
            let _ = writeln!(s, "cp={}", triples.len());
        }
        Format::Csv => {
            s.push_str("w,s,gamma,rho,sigma\n");
            let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            for t in triples {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    t.ground_parts(),
                    t.sky_parts(),
                    join(&t.gamma),
                    join(&t.rho),
                    join(&t.sigma)
                );
            }
        }
        Format::Json => {
            let list: Vec<serde_json::Value> = triples
                .iter()
                .map(|t| serde_json::json!({"gamma": t.gamma, "rho": t.rho, "sigma": t.sigma}))
                .collect();
            let v = serde_json::json!({
                "a": params.a, "b": params.b, "m": params.m, "n": n,
                "count": triples.len(), "triples": list,
            });
            s = serde_json::to_string_pretty(&v).expect("json") + "\n";
        }
    }
    s
}

pub fn reports_text(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    let mut tally = [0usize; 3];
    for r in reports {
        tally[r.verdict as usize] += 1;
        let _ = writeln!(
            s,
            "{:<7} {}    [{}] terms={} failures={}{}",
            verdict_str(r.verdict),
            r.claim,
            r.claim.provenance,
            r.n_checked,
            r.failures,
            if r.engines_agree { "" } else { " ENGINE-DISAGREEMENT" }
        );
        for cx in &r.counterexamples {
            let exact = match (&cx.lhs_exact, cx.confirmed) {
                (Some(v), Some(true)) => format!(" exact={v} confirmed"),
                (Some(v), _) => format!(" exact={v} NOT confirmed"),
                (None, _) => String::new(),
            };
            let _ =
                writeln!(s, "          n={} index={} lhs={} rhs={}{exact}", cx.n, cx.index, cx.lhs, cx.rhs);
        }
        if let Some(c) = &r.canonical_form {
            let _ = writeln!(
                s,
                "          from canonical offset {}: {} terms={} failures={}",
                c.start,
                verdict_str(c.verdict),
                c.n_checked,
                c.failures
            );
        }
    }
    let _ = writeln!(s, "summary: {} PASS, {} FAIL, {} VACUOUS", tally[0], tally[1], tally[2]);
    s
}

pub fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut s = String::from("provenance,claim,verdict,n_checked,failures,first_counterexample\n");
    for r in reports {
        let first = r.counterexamples.first().map(|c| c.index.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            csv_field(&r.claim.provenance),
            csv_field(&r.claim.to_string()),
            verdict_str(r.verdict),
            r.n_checked,
            r.failures,
            first
        );
    }
    s
}

pub fn claims_csv(claims: &[ProgressionClaim]) -> String {
    let mut s = String::from("provenance,source,A,B,raw_offset,modulus,rhs\n");
    for c in claims {
        let raw = c.raw_offset.map(|r| r.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            csv_field(&c.provenance),
            csv_field(&c.source.to_string()),
            c.step,
            c.offset,
            raw,
            c.modulus,
            c.rhs
        );
    }
    s
}

pub fn candidates(source: &SeriesSource, modulus: u64, hits: &[Candidate], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            for c in hits {
                let _ = writeln!(
                    s,
                    "{source}({}n+{}) ≡ 0 (mod {modulus})    terms={}",
                    c.step, c.offset, c.terms
                );
            }
            let _ = writeln!(s, "candidates={}", hits.len());
        }
        Format::Csv => {
            s.push_str("A,B,terms\n");
            for c in hits {
                let _ = writeln!(s, "{},{},{}", c.step, c.offset, c.terms);
            }
        }
        Format::Json => {
            let v = serde_json::json!({"source": source.to_string(), "modulus": modulus, "candidates": hits});
            s = serde_json::to_string_pretty(&v).expect("json") + "\n";
        }
    }
    s
}

pub fn identity_checks<'a>(
    checks: impl Iterator<Item = (&'a str, &'a str, Option<&'a str>)>,
    format: Format,
) -> String {
    let checks: Vec<_> = checks.collect();
    let mut s = String::new();
    match format {
        Format::Text => {
            for (name, range, mismatch) in &checks {
                match mismatch {
                    None => {
                        let _ = writeln!(s, "PASS {name} ({range})");
                    }
                    Some(m) => {
                        let _ = writeln!(s, "FAIL {name} ({range}): {m}");
                    }
                }
            }
        }
        Format::Csv => {
            s.push_str("identity,range,verdict,first_mismatch\n");
            for (name, range, mismatch) in &checks {
                let verdict = if mismatch.is_some() { "FAIL" } else { "PASS" };
                let _ = writeln!(
                    s,
                    "{},{},{verdict},{}",
                    csv_field(name),
                    csv_field(range),
                    mismatch.unwrap_or("")
                );
            }
        }
        Format::Json => {
            let list: Vec<serde_json::Value> = checks
                .iter()
                .map(|(name, range, mismatch)| {
                    serde_json::json!({
                        "identity": name, "range": range,
                        "verdict": if mismatch.is_some() { "FAIL" } else { "PASS" },
                        "first_mismatch": mismatch,
                    })
                })
                .collect();
            s = serde_json::to_string_pretty(&list).expect("json") + "\n";
        }
    }
    s
}
