//! Scan a coefficient sequence for arithmetic progressions on which it
//! vanishes modulo `M`. Hits are candidates, not theorems.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::claim::SeriesSource;
use crate::error::{Error, Result};
use crate::series::{Ring, Series};

/// Fewer checked terms than this make a hit meaningless.
pub const MIN_TERMS_FLOOR: u64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Candidate {
    #[serde(rename = "A")]
    pub step: u64,
    #[serde(rename = "B")]
    pub offset: u64,
    pub terms: u64,
}

/// All `(A, B)` with `A` in `steps`, `0 <= B < A`, such that every
/// coefficient at `A n + B <= N` vanishes mod `modulus` and at least
/// `min_terms` terms were checked. Sorted by `A`, then `B`.
pub fn search_progressions(
    coeffs: &Series,
    modulus: u64,
    steps: RangeInclusive<u64>,
    min_terms: u64,
) -> Result<Vec<Candidate>> {
    if min_terms < MIN_TERMS_FLOOR {
        return Err(Error::InvalidFamily(format!("min_terms must be at least {MIN_TERMS_FLOOR}")));
    }
    if *steps.start() == 0 {
        return Err(Error::InvalidFamily("progression steps must be positive".into()));
    }
    let m = modulus as i128;
    let c = coeffs.coeffs();
    let horizon = coeffs.truncation() as u64;
    let mut out = Vec::new();
    for step in steps {
        for offset in 0..step.min(horizon + 1) {
            let terms = (horizon - offset) / step + 1;
            if terms < min_terms {
                continue;
            }
            let vanishes =
                (offset..=horizon).step_by(step as usize).all(|i| c[i as usize].rem_euclid(m) == 0);
            if vanishes {
                out.push(Candidate { step, offset, terms });
            }
        }
    }
    Ok(out)
}

/// [`search_progressions`] on the coefficients of `source` up to `horizon`.
pub fn search_source(
    source: &SeriesSource,
    modulus: u64,
    steps: RangeInclusive<u64>,
    horizon: usize,
    min_terms: u64,
) -> Result<Vec<Candidate>> {
    let series = source.series(Ring::from_modulus(modulus)?, horizon)?;
    search_progressions(&series, modulus, steps, min_terms)
}
