//! Adjudication of progression claims up to a finite horizon.
//!
//! Coefficients are read from the modular series engine. A sample of terms
//! (and every reported counterexample) is recomputed in exact arithmetic by
//! the copartition dynamic program, so each verdict carries evidence from two
//! independent routes.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::claim::{ProgressionClaim, Rhs, SeriesSource};
use crate::copartition::{CopartitionCounter, CopartitionParams};
use crate::error::Result;
use crate::series::{Ring, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Largest coefficient index examined.
    pub horizon: usize,
    /// Counterexamples kept per report.
    pub counterexample_cap: usize,
    /// Random terms recomputed exactly per claim.
    pub spot_checks: usize,
    /// Largest index recomputed in exact arithmetic.
    pub exact_cap: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            horizon: 2000,
            counterexample_cap: 10,
            spot_checks: 10,
            exact_cap: 2000,
            seed: 0x5eed,
        }
    }
}

/// A failing term. `n` counts from the first term of the stated progression
/// and `index = A n + start` is the coefficient index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub index: u64,
    pub lhs: u64,
    pub rhs: u64,
    /// Exact left-hand value when recomputed (decimal).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs_exact: Option<String>,
    /// Whether exact recomputation reproduced the mismatch.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub confirmed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub index: u64,
    pub residue: u64,
    pub exact: String,
    pub agrees: bool,
}

/// Outcome of the same claim tested from a different first term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSummary {
    pub start: u64,
    pub n_checked: u64,
    pub failures: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_failure: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: ProgressionClaim,
    pub verdict: Verdict,
    pub horizon: u64,
    /// First coefficient index tested.
    pub start: u64,
    pub n_checked: u64,
    /// Total failing terms; at most `counterexample_cap` are listed.
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
    /// The progression from the canonical offset `B`, reported when it
    /// differs from the stated start.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical_form: Option<FormSummary>,
    pub spot_checks: Vec<SpotCheck>,
    /// Every spot check agreed and every listed counterexample was reproduced.
    pub engines_agree: bool,
}

struct Scan {
    n_checked: u64,
    failures: u64,
    counterexamples: Vec<Counterexample>,
}

fn scan(claim: &ProgressionClaim, start: u64, lhs: &Series, rhs: Option<&Series>, cap: usize) -> Scan {
    let m = claim.modulus as i128;
    let mut out = Scan { n_checked: 0, failures: 0, counterexamples: Vec::new() };
    let horizon = lhs.truncation() as u64;
    let mut index = start;
    let mut n = 0u64;
    while index <= horizon {
        let left = lhs.coeffs()[index as usize].rem_euclid(m);
        let right = match rhs {
            None => 0,
            Some(r) => r.coeffs()[n as usize].rem_euclid(m),
        };
        out.n_checked += 1;
        if left != right {
            out.failures += 1;
            if out.counterexamples.len() < cap {
                out.counterexamples.push(Counterexample {
                    n,
                    index,
                    lhs: left as u64,
                    rhs: right as u64,
                    lhs_exact: None,
                    confirmed: None,
                });
            }
        }
        index += claim.step;
        n += 1;
    }
    out
}

fn verdict_of(scan: &Scan) -> Verdict {
    match (scan.n_checked, scan.failures) {
        (0, _) => Verdict::Vacuous,
        (_, 0) => Verdict::Pass,
        _ => Verdict::Fail,
    }
}

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

type Slot<T> = Arc<OnceLock<T>>;
type Cache<K, T> = Mutex<HashMap<K, Slot<T>>>;

/// Shared coefficient tables for verifying many claims.
pub struct Verifier {
    options: VerifyOptions,
    modular: Cache<(SeriesSource, u64), Result<Arc<Series>>>,
    exact: Cache<SeriesSource, Option<Arc<Series>>>,
    counters: Cache<CopartitionParams, Arc<CopartitionCounter>>,
}

fn slot<K: std::hash::Hash + Eq + Clone, T>(map: &Cache<K, T>, key: &K) -> Slot<T> {
    map.lock().expect("cache lock").entry(key.clone()).or_default().clone()
}

impl Verifier {
    pub fn new(options: VerifyOptions) -> Self {
        Verifier { options, modular: Mutex::default(), exact: Mutex::default(), counters: Mutex::default() }
    }

    pub fn options(&self) -> &VerifyOptions {
        &self.options
    }

    /// Coefficients `0..=horizon` of `source` modulo `m`.
    pub fn modular_series(&self, source: &SeriesSource, m: u64) -> Result<Arc<Series>> {
        let cell = slot(&self.modular, &(source.clone(), m));
        cell.get_or_init(|| {
            let ring = Ring::from_modulus(m)?;
            Ok(Arc::new(source.series(ring, self.options.horizon)?))
        })
        .clone()
    }

    fn counter(&self, params: CopartitionParams) -> Arc<CopartitionCounter> {
        let cap = self.options.exact_cap.min(self.options.horizon as u64);
        slot(&self.counters, &params).get_or_init(|| Arc::new(CopartitionCounter::new(params, cap))).clone()
    }

    /// Exact coefficient at `index`, by the dynamic program for copartition
    /// sources and by exact series expansion otherwise. `None` when the index
    /// is past the exact cap or the value overflows the exact engine.
    pub fn exact_coefficient(&self, source: &SeriesSource, index: u64) -> Option<ExactValue> {
        let cap = self.options.exact_cap.min(self.options.horizon as u64);
        if index > cap {
            return None;
        }
        if let Some(params) = source.copartition_params() {
            return Some(ExactValue::Natural(self.counter(params).count(index)));
        }
        let series = slot(&self.exact, source)
            .get_or_init(|| source.series(Ring::Integers, cap as usize).ok().map(Arc::new))
            .clone()?;
        Some(ExactValue::Integer(series.coeffs()[index as usize]))
    }

    pub fn verify(&self, claim: &ProgressionClaim) -> Result<VerificationReport> {
        let opts = &self.options;
        let lhs = self.modular_series(&claim.source, claim.modulus)?;
        let rhs = match &claim.rhs {
            Rhs::Zero => None,
            Rhs::Series { name } => Some(self.modular_series(name, claim.modulus)?),
        };
        let start = claim.stated_start();
        let main = scan(claim, start, &lhs, rhs.as_deref(), opts.counterexample_cap);
        let verdict = verdict_of(&main);

        let canonical_form = (start != claim.offset && claim.rhs == Rhs::Zero).then(|| {
            let s = scan(claim, claim.offset, &lhs, None, 1);
            FormSummary {
                start: claim.offset,
                n_checked: s.n_checked,
                failures: s.failures,
                verdict: verdict_of(&s),
                first_failure: s.counterexamples.first().map(|c| c.index),
            }
        });

        let m = claim.modulus;
        let mut counterexamples = main.counterexamples;
        for cx in counterexamples.iter_mut() {
            let Some(exact_lhs) = self.exact_coefficient(&claim.source, cx.index) else { continue };
            let exact_rhs = match &claim.rhs {
                Rhs::Zero => Some(0),
                Rhs::Series { name } => self.exact_coefficient(name, cx.n).map(|v| v.residue(m)),
            };
            cx.confirmed = exact_rhs.map(|r| {
                let l = exact_lhs.residue(m);
                l == cx.lhs && r == cx.rhs && l != r
            });
            cx.lhs_exact = Some(exact_lhs.to_string());
        }

        let spot_checks = self.spot_checks(claim, start, &lhs);
        let engines_agree = spot_checks.iter().all(|s| s.agrees)
            && counterexamples.iter().all(|c| c.confirmed.unwrap_or(true));

        Ok(VerificationReport {
            claim: claim.clone(),
            verdict,
            horizon: opts.horizon as u64,
            start,
            n_checked: main.n_checked,
            failures: main.failures,
            counterexamples,
            canonical_form,
            spot_checks,
            engines_agree,
        })
    }

    fn spot_checks(&self, claim: &ProgressionClaim, start: u64, lhs: &Series) -> Vec<SpotCheck> {
        let cap = self.options.exact_cap.min(self.options.horizon as u64);
        let mut candidates: Vec<u64> =
            (0..).map(|n| start + claim.step * n).take_while(|&i| i <= cap).collect();
        let mut rng = StdRng::seed_from_u64(self.options.seed ^ fnv1a(&claim.to_string()));
        candidates.shuffle(&mut rng);
        candidates.truncate(self.options.spot_checks);
        candidates.sort_unstable();
        let m = claim.modulus;
        candidates
            .into_iter()
            .filter_map(|index| {
                let exact = self.exact_coefficient(&claim.source, index)?;
                let residue = lhs.coeffs()[index as usize].rem_euclid(m as i128) as u64;
                Some(SpotCheck {
                    index,
                    residue,
                    agrees: exact.residue(m) == residue,
                    exact: exact.to_string(),
                })
            })
            .collect()
    }

    /// Verifies claims in parallel; reports keep the input order.
    pub fn verify_all(&self, claims: &[ProgressionClaim]) -> Result<Vec<VerificationReport>> {
        claims.par_iter().map(|c| self.verify(c)).collect()
    }
}

/// An exactly computed coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Natural(BigUint),
    Integer(i128),
}

impl ExactValue {
    pub fn residue(&self, m: u64) -> u64 {
        match self {
            ExactValue::Natural(v) => (v % m).to_u64().expect("residue fits u64"),
            ExactValue::Integer(v) => v.rem_euclid(m as i128) as u64,
        }
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactValue::Natural(v) => write!(f, "{v}"),
            ExactValue::Integer(v) => write!(f, "{v}"),
        }
    }
}

/// Verifies a single claim with fresh tables.
pub fn verify_claim(claim: &ProgressionClaim, options: VerifyOptions) -> Result<VerificationReport> {
    Verifier::new(options).verify(claim)
}
