//! Claims about coefficient sequences along arithmetic progressions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::copartition::{cp_gf_series, CopartitionParams};
use crate::error::{Error, Result};
use crate::series::{euler_product, Ring, Series};

/// Named sequences that are not a single Euler-product power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedSeries {
    /// `f_1 f_3`
    #[serde(rename = "f1*f3")]
    F1F3,
    /// Partition numbers, `1 / f_1`.
    #[serde(rename = "p")]
    Partitions,
}

/// Where the coefficients of a claim come from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeriesSource {
    Copartition {
        a: u64,
        b: u64,
        m: u64,
    },
    /// `f_k^e`
    EtaPower {
        k: u64,
        e: u32,
    },
    Named {
        name: NamedSeries,
    },
}

impl SeriesSource {
    pub fn copartition(params: CopartitionParams) -> Self {
        SeriesSource::Copartition { a: params.a, b: params.b, m: params.m }
    }

    pub fn copartition_params(&self) -> Option<CopartitionParams> {
        match *self {
            SeriesSource::Copartition { a, b, m } => Some(CopartitionParams { a, b, m }),
            _ => None,
        }
    }

    /// Coefficients `0..=N` in `ring`.
    pub fn series(&self, ring: Ring, truncation: usize) -> Result<Series> {
        match *self {
            SeriesSource::Copartition { a, b, m } => {
                cp_gf_series(&CopartitionParams::new(a, b, m)?, ring, truncation)
            }
            SeriesSource::EtaPower { k, e } => {
                if k == 0 {
                    return Err(Error::InvalidFamily("eta power needs k >= 1".into()));
                }
                euler_product(k as usize, ring, truncation)?.pow(e)
            }
            SeriesSource::Named { name: NamedSeries::F1F3 } => {
                euler_product(1, ring, truncation)?.mul(&euler_product(3, ring, truncation)?)
            }
            SeriesSource::Named { name: NamedSeries::Partitions } => {
                euler_product(1, ring, truncation)?.invert()
            }
        }
    }
}

impl fmt::Display for SeriesSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesSource::Copartition { a, b, m } => write!(f, "cp({a},{b},{m})"),
            SeriesSource::EtaPower { k, e: 1 } => write!(f, "f{k}"),
            SeriesSource::EtaPower { k, e } => write!(f, "f{k}^{e}"),
            SeriesSource::Named { name: NamedSeries::F1F3 } => write!(f, "f1*f3"),
            SeriesSource::Named { name: NamedSeries::Partitions } => write!(f, "p"),
        }
    }
}

fn parse_u64(s: &str, what: &str) -> std::result::Result<u64, String> {
    s.trim().parse().map_err(|_| format!("invalid {what}: {s:?}"))
}

impl FromStr for SeriesSource {
    type Err = String;

    /// Accepts `cp(a,b,m)`, `f<k>`, `f<k>^<e>`, `f1*f3` and `p`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("cp(").and_then(|r| r.strip_suffix(')')) {
            let fields: Vec<&str> = inner.split(',').collect();
            if fields.len() != 3 {
                return Err(format!("expected cp(a,b,m), got {s:?}"));
            }
            return Ok(SeriesSource::Copartition {
                a: parse_u64(fields[0], "a")?,
                b: parse_u64(fields[1], "b")?,
                m: parse_u64(fields[2], "m")?,
            });
        }
        match s {
            "f1*f3" => return Ok(SeriesSource::Named { name: NamedSeries::F1F3 }),
            "p" => return Ok(SeriesSource::Named { name: NamedSeries::Partitions }),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('f') {
            let (k, e) = match rest.split_once('^') {
                Some((k, e)) => (k, e),
                None => (rest, "1"),
            };
            let e = e.trim().parse::<u32>().map_err(|_| format!("invalid exponent in {s:?}"))?;
            return Ok(SeriesSource::EtaPower { k: parse_u64(k, "index")?, e });
        }
        Err(format!("unknown series {s:?}"))
    }
}

/// Right-hand side of a claim.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rhs {
    /// Every coefficient on the progression vanishes mod M.
    Zero,
    /// The n-th term matches the n-th coefficient of another series mod M.
    Series {
        #[serde(with = "source_name")]
        name: SeriesSource,
    },
}

mod source_name {
    use super::SeriesSource;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(src: &SeriesSource, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(src)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SeriesSource, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

impl fmt::Display for Rhs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rhs::Zero => write!(f, "zero"),
            Rhs::Series { name } => write!(f, "{name}"),
        }
    }
}

/// "coefficients of `source` at `A n + B` are ≡ rhs (mod M)".
///
/// `offset` is always the canonical residue in `[0, A)`. When the statement
/// was written with a different offset (negative, or past `A`) it is kept in
/// `raw_offset`, and the stated progression starts there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClaim")]
pub struct ProgressionClaim {
    pub source: SeriesSource,
    #[serde(rename = "A")]
    pub step: u64,
    #[serde(rename = "B")]
    pub offset: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub raw_offset: Option<i64>,
    pub modulus: u64,
    pub rhs: Rhs,
    pub provenance: String,
}

#[derive(Deserialize)]
struct RawClaim {
    source: SeriesSource,
    #[serde(rename = "A")]
    step: u64,
    #[serde(rename = "B")]
    offset: u64,
    #[serde(default)]
    raw_offset: Option<i64>,
    modulus: u64,
    rhs: Rhs,
    provenance: String,
}

impl TryFrom<RawClaim> for ProgressionClaim {
    type Error = String;

    fn try_from(raw: RawClaim) -> std::result::Result<Self, Self::Error> {
        let claim = ProgressionClaim {
            source: raw.source,
            step: raw.step,
            offset: raw.offset,
            raw_offset: raw.raw_offset,
            modulus: raw.modulus,
            rhs: raw.rhs,
            provenance: raw.provenance,
        };
        claim.validate()?;
        Ok(claim)
    }
}

impl ProgressionClaim {
    /// Builds a claim from a possibly out-of-range offset.
    pub fn new(
        source: SeriesSource,
        step: u64,
        offset: i64,
        modulus: u64,
        rhs: Rhs,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidFamily("progression step must be positive".into()));
        }
        let canonical = offset.rem_euclid(step as i64) as u64;
        let claim = ProgressionClaim {
            source,
            step,
            offset: canonical,
            raw_offset: (offset != canonical as i64).then_some(offset),
            modulus,
            rhs,
            provenance: provenance.into(),
        };
        claim.validate().map_err(Error::InvalidFamily)?;
        Ok(claim)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.step == 0 {
            return Err("A must be positive".into());
        }
        if self.offset >= self.step {
            return Err(format!("B = {} must be less than A = {}", self.offset, self.step));
        }
        if self.modulus < 2 {
            return Err(format!("modulus {} must be at least 2", self.modulus));
        }
        if let Some(raw) = self.raw_offset {
            if raw.rem_euclid(self.step as i64) as u64 != self.offset {
                return Err(format!("raw offset {raw} is not congruent to B mod A"));
            }
        }
        Ok(())
    }

    /// First index of the stated progression: the raw offset when it is
    /// nonnegative, otherwise the canonical one.
    pub fn stated_start(&self) -> u64 {
        match self.raw_offset {
            Some(raw) if raw >= 0 => raw as u64,
            _ => self.offset,
        }
    }
}

impl fmt::Display for ProgressionClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let start = self.raw_offset.unwrap_or(self.offset as i64);
        write!(f, "{}; {}n{:+}; mod {}; {}", self.source, self.step, start, self.modulus, self.rhs)
    }
}

impl FromStr for ProgressionClaim {
    type Err = String;

    /// Inline form `"<source>; <A>n+<B>; mod <M>; <rhs>"`, e.g.
    /// `"cp(3,1,4); 2n+0; mod 2; zero"`. The offset may be negative.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split(';').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(format!("expected 4 ';'-separated fields, got {}", fields.len()));
        }
        let source: SeriesSource = fields[0].parse()?;
        let prog = fields[1].replace(' ', "");
        let (step, offset) = prog
            .split_once('n')
            .ok_or_else(|| format!("progression must look like An+B, got {:?}", fields[1]))?;
        let step: u64 = step.parse().map_err(|_| format!("invalid step {step:?}"))?;
        let offset: i64 = if offset.is_empty() {
            0
        } else {
            offset.trim_start_matches('+').parse().map_err(|_| format!("invalid offset {offset:?}"))?
        };
        let modulus = fields[2]
            .strip_prefix("mod")
            .ok_or_else(|| format!("expected 'mod M', got {:?}", fields[2]))
            .and_then(|m| parse_u64(m, "modulus"))?;
        let rhs = match fields[3] {
            "zero" | "0" => Rhs::Zero,
            other => Rhs::Series { name: other.parse()? },
        };
        ProgressionClaim::new(source, step, offset, modulus, rhs, format!("inline: {s}"))
            .map_err(|e| e.to_string())
    }
}
