//! Parametrized congruence families for `cp_{3,1,4}` and `cp_{5,1,6}`,
//! expanded into explicit [`ProgressionClaim`]s.
//!
//! Families come in two flavours per parameter set:
//!
//! - `cp314-*`: `cp_{3,1,4}` against `f_1^5` modulo 2, offsets built from `5`,
//! - `cp516-*`: `cp_{5,1,6}` against `f_1^4` modulo 6, offsets built from `4`,
//!
//! plus the prime-square parity families (with modular inverses of 24 and 6)
//! and fixed residue lists.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::claim::{ProgressionClaim, Rhs, SeriesSource};
use super::numtheory::{is_prime, legendre_symbol, mod_inverse};
use crate::copartition::CopartitionParams;
use crate::error::{Error, Result};

/// Which of the two lifted sequences a family talks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kernel {
    /// `cp_{3,1,4}` with `f_1^5`, constant 5, modulus 2.
    #[serde(rename = "cp314")]
    Cp314,
    /// `cp_{5,1,6}` with `f_1^4`, constant 4, modulus 6.
    #[serde(rename = "cp516")]
    Cp516,
}

impl Kernel {
    fn params(self) -> CopartitionParams {
        match self {
            Kernel::Cp314 => CopartitionParams { a: 3, b: 1, m: 4 },
            Kernel::Cp516 => CopartitionParams { a: 5, b: 1, m: 6 },
        }
    }

    fn constant(self) -> i128 {
        match self {
            Kernel::Cp314 => 5,
            Kernel::Cp516 => 4,
        }
    }

    fn exponent(self) -> u32 {
        self.constant() as u32
    }

    fn modulus(self) -> u64 {
        match self {
            Kernel::Cp314 => 2,
            Kernel::Cp516 => 6,
        }
    }

    fn source(self) -> SeriesSource {
        SeriesSource::copartition(self.params())
    }

    fn tag(self) -> &'static str {
        match self {
            Kernel::Cp314 => "cp314",
            Kernel::Cp516 => "cp516",
        }
    }
}

/// A parametrized family of claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `cp(p^{2α} n + c(p^{2α}-1)/24) ≡ [q^n] f_1^c`.
    Lift { kernel: Kernel, p: u64, alpha: u32 },
    /// `cp(p^{2α+1} n + c(p^{2α+2}-1)/24) ≡ [q^n] f_p^c`; the offset that
    /// makes the extraction step integral.
    OddLift { kernel: Kernel, p: u64, alpha: u32 },
    /// `cp(p^{2α} n + ((24j + c p) p^{2α-1} - c)/24) ≡ 0` for `j = 1..p-1`, `α >= 1`.
    LiftVanishing { kernel: Kernel, p: u64, alpha: u32 },
    /// `cp(p^{2α+1} n + ((24j + c) p^{2α} - c)/24) ≡ 0` for the `j in 1..p-1`
    /// with `((24j + c)/p) = -1`.
    NonresidueVanishing { kernel: Kernel, p: u64, alpha: u32 },
    /// `cp(P n + c(P-1)/24) ≡ [q^n] f_1^c` with `P = prod p_s^2`.
    MultiPrimeLift { kernel: Kernel, primes: Vec<u64> },
    /// `cp_{3,1,4}(p^2 k + p t - 5δ) ≡ 0 (mod 2)`, `24δ ≡ 1 (mod p^2)`,
    /// prime `p > 3`, `p ≡ 3 (mod 4)`.
    Cp314PrimeSquare { p: u64 },
    /// `cp_{5,1,6}(p^2 k + p t - δ) ≡ 0 (mod 2)`, `6δ ≡ 1 (mod p^2)`,
    /// prime `p > 2`, `p ≡ 2 (mod 3)`.
    Cp516PrimeSquare { p: u64 },
    /// `cp(step k + r) ≡ 0 (mod modulus)` for each listed `r`.
    FixedResidues { params: CopartitionParams, step: u64, residues: Vec<u64>, modulus: u64, label: String },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Lift { kernel, p, alpha } => write!(f, "{}-lift p={p} alpha={alpha}", kernel.tag()),
            FamilySpec::OddLift { kernel, p, alpha } => {
                write!(f, "{}-odd-lift p={p} alpha={alpha}", kernel.tag())
            }
            FamilySpec::LiftVanishing { kernel, p, alpha } => {
                write!(f, "{}-lift-vanishing p={p} alpha={alpha}", kernel.tag())
            }
            FamilySpec::NonresidueVanishing { kernel, p, alpha } => {
                write!(f, "{}-nonresidue-vanishing p={p} alpha={alpha}", kernel.tag())
            }
            FamilySpec::MultiPrimeLift { kernel, primes } => {
                let list: Vec<String> = primes.iter().map(u64::to_string).collect();
                write!(f, "{}-multi-prime-lift primes=[{}]", kernel.tag(), list.join(","))
            }
            FamilySpec::Cp314PrimeSquare { p } => write!(f, "cp314-prime-square p={p}"),
            FamilySpec::Cp516PrimeSquare { p } => write!(f, "cp516-prime-square p={p}"),
            FamilySpec::FixedResidues { label, .. } => write!(f, "fixed-residues {label}"),
        }
    }
}

impl FromStr for Kernel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cp314" => Ok(Kernel::Cp314),
            "cp516" => Ok(Kernel::Cp516),
            _ => Err(format!("unknown kernel {s:?} (expected cp314 or cp516)")),
        }
    }
}

fn pow(p: u64, e: u32) -> Result<i128> {
    (p as i128).checked_pow(e).ok_or_else(|| Error::InvalidFamily(format!("{p}^{e} is too large")))
}

fn exact_div(numerator: i128, divisor: i128) -> Result<i128> {
    if numerator % divisor != 0 {
        return Err(Error::NonIntegralOffset { numerator, divisor });
    }
    Ok(numerator / divisor)
}

fn require_lift_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    Ok(())
}

fn to_u64(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::InvalidFamily(format!("{x} does not fit a progression step")))
}

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::InvalidFamily(format!("{x} does not fit an offset")))
}

/// Expands a family into explicit claims.
pub fn build_family(spec: &FamilySpec) -> Result<Vec<ProgressionClaim>> {
    let label = spec.to_string();
    match spec {
        FamilySpec::Lift { kernel, p, alpha } => {
            require_lift_prime(*p)?;
            let c = kernel.constant();
            let step = pow(*p, 2 * alpha)?;
            let offset = exact_div(c * (step - 1), 24)?;
            let rhs = Rhs::Series { name: SeriesSource::EtaPower { k: 1, e: kernel.exponent() } };
            Ok(vec![ProgressionClaim::new(
                kernel.source(),
                to_u64(step)?,
                to_i64(offset)?,
                kernel.modulus(),
                rhs,
                label,
            )?])
        }
        FamilySpec::OddLift { kernel, p, alpha } => {
            require_lift_prime(*p)?;
            let c = kernel.constant();
            let step = pow(*p, 2 * alpha + 1)?;
            let offset = exact_div(c * (pow(*p, 2 * alpha + 2)? - 1), 24)?;
            let rhs = Rhs::Series { name: SeriesSource::EtaPower { k: *p, e: kernel.exponent() } };
            Ok(vec![ProgressionClaim::new(
                kernel.source(),
                to_u64(step)?,
                to_i64(offset)?,
                kernel.modulus(),
                rhs,
                label,
            )?])
        }
        FamilySpec::LiftVanishing { kernel, p, alpha } => {
            require_lift_prime(*p)?;
            if *alpha == 0 {
                return Err(Error::InvalidFamily("lift-vanishing needs alpha >= 1".into()));
            }
            let c = kernel.constant();
            let step = pow(*p, 2 * alpha)?;
            let inner = pow(*p, 2 * alpha - 1)?;
            (1..*p)
                .map(|j| {
                    let numerator = (24 * j as i128 + c * *p as i128) * inner - c;
                    let offset = exact_div(numerator, 24)?;
                    ProgressionClaim::new(
                        kernel.source(),
                        to_u64(step)?,
                        to_i64(offset)?,
                        kernel.modulus(),
                        Rhs::Zero,
                        format!("{label} j={j}"),
                    )
                })
                .collect()
        }
        FamilySpec::NonresidueVanishing { kernel, p, alpha } => {
            require_lift_prime(*p)?;
            let c = kernel.constant();
            let step = pow(*p, 2 * alpha + 1)?;
            let inner = pow(*p, 2 * alpha)?;
            let mut claims = Vec::new();
            for j in 1..*p {
                let symbol = 24 * j as i128 + c;
                if legendre_symbol(symbol, *p)? != -1 {
                    continue;
                }
                let offset = exact_div(symbol * inner - c, 24)?;
                claims.push(ProgressionClaim::new(
                    kernel.source(),
                    to_u64(step)?,
                    to_i64(offset)?,
                    kernel.modulus(),
                    Rhs::Zero,
                    format!("{label} j={j}"),
                )?);
            }
            Ok(claims)
        }
        FamilySpec::MultiPrimeLift { kernel, primes } => {
            let mut step: i128 = 1;
            for &p in primes {
                require_lift_prime(p)?;
                step = step
                    .checked_mul(pow(p, 2)?)
                    .ok_or_else(|| Error::InvalidFamily("prime product too large".into()))?;
            }
            let c = kernel.constant();
            let offset = exact_div(c * (step - 1), 24)?;
            let rhs = Rhs::Series { name: SeriesSource::EtaPower { k: 1, e: kernel.exponent() } };
            Ok(vec![ProgressionClaim::new(
                kernel.source(),
                to_u64(step)?,
                to_i64(offset)?,
                kernel.modulus(),
                rhs,
                label,
            )?])
        }
        FamilySpec::Cp314PrimeSquare { p } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if *p <= 3 || p % 4 != 3 {
                return Err(Error::InvalidFamily(format!("need a prime p > 3 with p ≡ 3 (mod 4), got {p}")));
            }
            prime_square_claims(Kernel::Cp314.params(), *p, 24, 5, &label)
        }
        FamilySpec::Cp516PrimeSquare { p } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if *p <= 2 || p % 3 != 2 {
                return Err(Error::InvalidFamily(format!("need a prime p > 2 with p ≡ 2 (mod 3), got {p}")));
            }
            prime_square_claims(Kernel::Cp516.params(), *p, 6, 1, &label)
        }
        FamilySpec::FixedResidues { params, step, residues, modulus, label: _ } => residues
            .iter()
            .map(|&r| {
                ProgressionClaim::new(
                    SeriesSource::copartition(*params),
                    *step,
                    r as i64,
                    *modulus,
                    Rhs::Zero,
                    format!("{label} r={r}"),
                )
            })
            .collect(),
    }
}

/// `cp(p^2 k + p t - scale δ) ≡ 0 (mod 2)` for `t = 1..p-1`, with
/// `inverse_of δ ≡ 1 (mod p^2)`.
fn prime_square_claims(
    params: CopartitionParams,
    p: u64,
    inverse_of: i128,
    scale: i64,
    label: &str,
) -> Result<Vec<ProgressionClaim>> {
    let square = p * p;
    let delta = mod_inverse(inverse_of, square)? as i64;
    (1..p)
        .map(|t| {
            ProgressionClaim::new(
                SeriesSource::copartition(params),
                square,
                (p * t) as i64 - scale * delta,
                2,
                Rhs::Zero,
                format!("{label} t={t} delta={delta}"),
            )
        })
        .collect()
}

fn fixed(params: CopartitionParams, step: u64, residues: &[u64], modulus: u64, label: &str) -> FamilySpec {
    FamilySpec::FixedResidues { params, step, residues: residues.to_vec(), modulus, label: label.to_string() }
}

/// Residue list stated for `cp_{3,1,4}` modulo 2 with step 49.
pub const CP314_STEP49: [u64; 6] = [3, 17, 24, 31, 38, 45];
/// Residue list stated with step 49 although most entries exceed 49; they
/// form the `t`-orbit for `p = 11`, i.e. step 121.
pub const CP314_STEP49_OR_121: [u64; 10] = [3, 14, 36, 47, 58, 69, 80, 91, 102, 113];
/// Residue list stated for `cp_{5,1,6}` modulo 2 with step 25.
pub const CP516_STEP25: [u64; 4] = [9, 14, 19, 24];
/// Residue list stated for `cp_{5,1,6}` modulo 2 with step 121.
pub const CP516_STEP121: [u64; 10] = [9, 31, 42, 53, 64, 75, 86, 97, 108, 119];

/// The families encoded in the shipped catalog.
pub fn canonical_families() -> Vec<FamilySpec> {
    use Kernel::*;
    let cp314 = Cp314.params();
    let cp516 = Cp516.params();
    let mut specs = Vec::new();
    for kernel in [Cp314, Cp516] {
        for (p, alpha) in [(5, 0), (5, 1), (7, 1)] {
            specs.push(FamilySpec::Lift { kernel, p, alpha });
        }
        for (p, alpha) in [(5, 0), (7, 0)] {
            specs.push(FamilySpec::OddLift { kernel, p, alpha });
        }
        for (p, alpha) in [(5, 1), (7, 1)] {
            specs.push(FamilySpec::LiftVanishing { kernel, p, alpha });
        }
        for (p, alpha) in [(5, 0), (7, 0), (11, 0), (5, 1)] {
            specs.push(FamilySpec::NonresidueVanishing { kernel, p, alpha });
        }
        for primes in [vec![5, 7], vec![5, 5]] {
            specs.push(FamilySpec::MultiPrimeLift { kernel, primes });
        }
    }
    specs.push(FamilySpec::Cp314PrimeSquare { p: 7 });
    specs.push(FamilySpec::Cp314PrimeSquare { p: 11 });
    specs.push(FamilySpec::Cp516PrimeSquare { p: 5 });
    specs.push(FamilySpec::Cp516PrimeSquare { p: 11 });
    specs.push(fixed(cp314, 49, &CP314_STEP49, 2, "cp(3,1,4) step 49"));
    specs.push(fixed(cp314, 49, &CP314_STEP49_OR_121, 2, "cp(3,1,4) step 49 as printed"));
    specs.push(fixed(cp314, 121, &CP314_STEP49_OR_121, 2, "cp(3,1,4) step 121 reading"));
    specs.push(fixed(cp516, 25, &CP516_STEP25, 2, "cp(5,1,6) step 25"));
    specs.push(fixed(cp516, 121, &CP516_STEP121, 2, "cp(5,1,6) step 121"));
    specs
}

/// Parity facts that follow from `f_2 ≡ f_1^2 (mod 2)`; used as positive controls.
pub fn positive_controls() -> Vec<ProgressionClaim> {
    vec![
        ProgressionClaim::new(
            Kernel::Cp314.source(),
            1,
            0,
            2,
            Rhs::Series { name: SeriesSource::EtaPower { k: 1, e: 5 } },
            "control: cp(3,1,4) ≡ f1^5 (mod 2)",
        )
        .expect("valid control"),
        ProgressionClaim::new(
            Kernel::Cp516.source(),
            1,
            0,
            2,
            Rhs::Series { name: "f1*f3".parse().expect("known series") },
            "control: cp(5,1,6) ≡ f1*f3 (mod 2)",
        )
        .expect("valid control"),
    ]
}

/// Every claim of the shipped catalog, in catalog order.
pub fn canonical_claims() -> Result<Vec<ProgressionClaim>> {
    let mut claims = positive_controls();
    for spec in canonical_families() {
        claims.extend(build_family(&spec)?);
    }
    Ok(claims)
}
