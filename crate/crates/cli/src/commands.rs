use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use copartition_core::lab::catalog::{catalog_to_string, reports_to_string};
use copartition_core::lab::{
    build_family, canonical_claims, catalog_load, catalog_save, search_source, shipped_catalog, FamilySpec,
    Kernel, ProgressionClaim, SeriesSource, Verdict, Verifier, VerifyOptions,
};
use copartition_core::{
    cp_gf_series, cp_special, enumerate_copartitions, eo_star_count, eo_star_series, euler_product,
    p_dissect_f, partition_numbers, ComponentKind, CopartitionCounter, CopartitionParams, Ring,
    SpecialVariant,
};

use crate::output;

#[derive(Parser, Debug)]
#[command(name = "copart", version, about = "Copartition counts and congruence lab")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Generating-function expansion (fixed-width exact or modular).
    Series,
    /// Dynamic program over ground/sky part counts (arbitrary precision).
    Dp,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ParamArgs {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
    #[arg(long)]
    pub m: u64,
}

impl ParamArgs {
    fn params(self) -> Result<CopartitionParams> {
        Ok(CopartitionParams::new(self.a, self.b, self.m)?)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print coefficients of cp_{a,b,m} or of a named series.
    Coeffs {
        #[arg(long, requires_all = ["b", "m"], conflicts_with = "series")]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        /// Named series instead of a copartition count: f<k>, f<k>^<e>, f1*f3, p.
        #[arg(long)]
        series: Option<String>,
        #[arg(long = "N")]
        horizon: usize,
        /// 0 for exact integers.
        #[arg(long, default_value_t = 0)]
        modulus: u64,
        #[arg(long, value_enum, default_value_t = Engine::Series)]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every copartition of n.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify claims from a catalog (default: the bundled one) or one inline claim.
    Verify {
        #[arg(long, conflicts_with = "claim")]
        catalog: Option<PathBuf>,
        /// Inline claim, e.g. "cp(3,1,4); 2n+0; mod 2; zero".
        #[arg(long)]
        claim: Option<String>,
        /// Only claims whose provenance contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long = "N", default_value_t = 2000)]
        horizon: usize,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(long, default_value_t = 10)]
        spot_checks: usize,
        /// Largest index recomputed exactly.
        #[arg(long, default_value_t = 2000)]
        exact_cap: u64,
        /// Write the JSON report file here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Generate the claims of a family, or the bundled catalog with --canonical.
    Families {
        #[arg(long, value_enum, required_unless_present = "canonical")]
        family: Option<FamilyKind>,
        #[arg(long, default_value = "cp314")]
        kernel: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 0)]
        alpha: u32,
        /// Keep only the claim for this j (vanishing families).
        #[arg(long)]
        j: Option<u64>,
        /// Comma-separated primes for multi-prime-lift.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long, conflicts_with = "family")]
        canonical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Show the p-dissection of f(-q) and check its reassembly.
    Dissect {
        #[arg(long)]
        p: u64,
        #[arg(long = "N", default_value_t = 2000)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the closed-form identities for special parameter sets.
    Identities {
        #[arg(long = "N", default_value_t = 200)]
        horizon: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for progressions on which a sequence vanishes modulo M.
    Search {
        /// cp(a,b,m), f<k>, f<k>^<e>, f1*f3 or p.
        #[arg(long)]
        source: String,
        #[arg(long)]
        modulus: u64,
        /// A single step; otherwise --step-min..=--step-max.
        #[arg(long, conflicts_with_all = ["step_min", "step_max"])]
        step: Option<u64>,
        #[arg(long, default_value_t = 2)]
        step_min: u64,
        #[arg(long, default_value_t = 50)]
        step_max: u64,
        #[arg(long = "N", default_value_t = 2000)]
        horizon: usize,
        #[arg(long, default_value_t = 20)]
        min_terms: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Lift,
    OddLift,
    LiftVanishing,
    NonresidueVanishing,
    MultiPrimeLift,
    Cp314PrimeSquare,
    Cp516PrimeSquare,
}

pub struct Outcome {
    pub status: u8,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { status: 0, output }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Coeffs { a, b, m, series, horizon, modulus, engine, format } => {
            coeffs(a, b, m, series, horizon, modulus, engine, format)
        }
        Command::Enumerate { params, n, format } => enumerate(params.params()?, n, format),
        Command::Verify { catalog, claim, filter, horizon, cap, spot_checks, exact_cap, out, format } => {
            let claims = match (catalog, claim) {
                (_, Some(text)) => vec![text.parse::<ProgressionClaim>().map_err(anyhow::Error::msg)?],
                (Some(path), None) => {
                    catalog_load(&path).with_context(|| format!("loading {}", path.display()))?
                }
                (None, None) => shipped_catalog(),
            };
            let claims: Vec<_> = match filter {
                Some(f) => claims.into_iter().filter(|c| c.provenance.contains(&f)).collect(),
                None => claims,
            };
            if claims.is_empty() {
                bail!("no claims selected");
            }
            let options = VerifyOptions {
                horizon,
                counterexample_cap: cap,
                spot_checks,
                exact_cap,
                ..VerifyOptions::default()
            };
            verify(&claims, options, out, format)
        }
        Command::Families { family, kernel, p, alpha, j, primes, canonical, out, format } => {
            let claims = if canonical {
                canonical_claims()?
            } else {
                let kernel: Kernel = kernel.parse().map_err(anyhow::Error::msg)?;
                let need_p = || p.context("--p is required for this family");
                let spec = match family.expect("clap enforces --family") {
                    FamilyKind::Lift => FamilySpec::Lift { kernel, p: need_p()?, alpha },
                    FamilyKind::OddLift => FamilySpec::OddLift { kernel, p: need_p()?, alpha },
                    FamilyKind::LiftVanishing => FamilySpec::LiftVanishing { kernel, p: need_p()?, alpha },
                    FamilyKind::NonresidueVanishing => {
                        FamilySpec::NonresidueVanishing { kernel, p: need_p()?, alpha }
                    }
                    FamilyKind::MultiPrimeLift => FamilySpec::MultiPrimeLift { kernel, primes },
                    FamilyKind::Cp314PrimeSquare => FamilySpec::Cp314PrimeSquare { p: need_p()? },
                    FamilyKind::Cp516PrimeSquare => FamilySpec::Cp516PrimeSquare { p: need_p()? },
                };
                let claims = build_family(&spec)?;
                match j {
                    Some(j) => {
                        let tag = format!(" j={j}");
                        claims.into_iter().filter(|c| c.provenance.ends_with(&tag)).collect()
                    }
                    None => claims,
                }
            };
            let text = match format {
                Format::Json => catalog_to_string(&claims),
                Format::Csv => output::claims_csv(&claims),
                Format::Text => claims.iter().map(|c| format!("{c}    [{}]\n", c.provenance)).collect(),
            };
            if let Some(path) = out {
                std::fs::write(&path, catalog_to_string(&claims))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(Outcome::ok(text))
        }
        Command::Dissect { p, horizon, format } => dissect(p, horizon, format),
        Command::Identities { horizon, format } => identities(horizon, format),
        Command::Search { source, modulus, step, step_min, step_max, horizon, min_terms, format } => {
            let source: SeriesSource = source.parse().map_err(anyhow::Error::msg)?;
            let steps = match step {
                Some(s) => s..=s,
                None => step_min..=step_max,
            };
            let hits = search_source(&source, modulus, steps, horizon, min_terms)?;
            Ok(Outcome::ok(output::candidates(&source, modulus, &hits, format)))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn coeffs(
    a: Option<u64>,
    b: Option<u64>,
    m: Option<u64>,
    series: Option<String>,
    horizon: usize,
    modulus: u64,
    engine: Engine,
    format: Format,
) -> Result<Outcome> {
    let source: SeriesSource = match (a, b, m, series) {
        (Some(a), Some(b), Some(m), None) => SeriesSource::copartition(CopartitionParams::new(a, b, m)?),
        (None, None, None, Some(name)) => name.parse().map_err(anyhow::Error::msg)?,
        _ => bail!("give either --a/--b/--m or --series"),
    };
    let values: Vec<String> = match engine {
        Engine::Series => {
            let ring = Ring::from_modulus(modulus)?;
            source.series(ring, horizon)?.coeffs().iter().map(i128::to_string).collect()
        }
        Engine::Dp => {
            let Some(params) = source.copartition_params() else {
                bail!("the dp engine only counts copartitions");
            };
            let counter = CopartitionCounter::new(params, horizon as u64);
            (0..=horizon as u64)
                .map(|n| {
                    let v = counter.count(n);
                    if modulus == 0 {
                        v.to_string()
                    } else {
                        (v % modulus).to_string()
                    }
                })
                .collect()
        }
    };
    Ok(Outcome::ok(output::coefficients(&source.to_string(), modulus, &values, format)))
}

fn enumerate(params: CopartitionParams, n: u64, format: Format) -> Result<Outcome> {
    let triples = enumerate_copartitions(&params, n);
    Ok(Outcome::ok(output::triples(&params, n, &triples, format)))
}

fn verify(
    claims: &[ProgressionClaim],
    options: VerifyOptions,
    out: Option<PathBuf>,
    format: Format,
) -> Result<Outcome> {
    let verifier = Verifier::new(options);
    let reports = verifier.verify_all(claims)?;
    if let Some(path) = out {
        catalog_save(&reports, &path).with_context(|| format!("writing {}", path.display()))?;
    }
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    let text = match format {
        Format::Json => reports_to_string(&reports),
        Format::Csv => output::reports_csv(&reports),
        Format::Text => output::reports_text(&reports),
    };
    Ok(Outcome { status: if failed { 1 } else { 0 }, output: text })
}

fn dissect(p: u64, horizon: usize, format: Format) -> Result<Outcome> {
    let d = p_dissect_f(p, Ring::Integers, horizon)?;
    let f1 = euler_product(1, Ring::Integers, horizon)?;
    let reassembles = d.reassembled == f1;
    let residual_class = (p * p - 1) / 24 % p;
    let disjoint = d
        .components
        .iter()
        .filter(|c| matches!(c.kind, ComponentKind::Theta { .. }))
        .all(|c| c.residue_class() != residual_class);
    let mut s = String::new();
    match format {
        Format::Json => {
            let comps: Vec<serde_json::Value> = d
                .components
                .iter()
                .map(|c| match c.kind {
                    ComponentKind::Theta { k, a, b } => serde_json::json!({
                        "kind": "theta", "k": k, "sign": c.sign, "shift": c.shift, "A": a, "B": b,
                        "class": c.residue_class(),
                    }),
                    ComponentKind::Residual => serde_json::json!({
                        "kind": "residual", "sign": c.sign, "shift": c.shift, "inner": format!("f{}", p * p),
                        "class": c.residue_class(),
                    }),
                })
                .collect();
            let v = serde_json::json!({
                "p": p, "N": horizon, "components": comps,
                "reassembles_f1": reassembles, "residual_class_disjoint": disjoint,
            });
            s = serde_json::to_string_pretty(&v)? + "\n";
        }
        Format::Csv => {
            s.push_str("kind,k,sign,shift,A,B,class\n");
            for c in &d.components {
                match c.kind {
                    ComponentKind::Theta { k, a, b } => {
                        writeln!(s, "theta,{k},{},{},{a},{b},{}", c.sign, c.shift, c.residue_class())?
                    }
                    ComponentKind::Residual => {
                        writeln!(s, "residual,,{},{},{},,{}", c.sign, c.shift, p * p, c.residue_class())?
                    }
                }
            }
        }
        Format::Text => {
            writeln!(s, "{p}-dissection of f(-q) up to q^{horizon}")?;
            for c in &d.components {
                let sign = if c.sign > 0 { '+' } else { '-' };
                match c.kind {
                    ComponentKind::Theta { k, a, b } => writeln!(
                        s,
                        "  {sign} q^{} f(-q^{a}, -q^{b})    k={k}, class {}",
                        c.shift,
                        c.residue_class()
                    )?,
                    ComponentKind::Residual => writeln!(
                        s,
                        "  {sign} q^{} f(-q^{})    residual, class {}",
                        c.shift,
                        p * p,
                        c.residue_class()
                    )?,
                }
            }
            writeln!(s, "reassembly equals f1: {}", if reassembles { "PASS" } else { "FAIL" })?;
            writeln!(s, "residual class disjoint: {}", if disjoint { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(Outcome { status: if reassembles && disjoint { 0 } else { 1 }, output: s })
}

struct IdentityCheck {
    name: &'static str,
    range: String,
    first_mismatch: Option<String>,
}

fn identities(horizon: usize, format: Format) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mismatch =
        |n: usize, l: &dyn std::fmt::Display, r: &dyn std::fmt::Display| Some(format!("n={n}: {l} vs {r}"));

    // cp(1,1,1) against partial sums of p(k)
    let series = cp_gf_series(&CopartitionParams::new(1, 1, 1)?, Ring::Integers, horizon)?;
    let partial = cp_special(SpecialVariant::Cp111, horizon)?;
    let first = (0..=horizon).find(|&n| series.coeffs()[n] != partial[n]);
    checks.push(IdentityCheck {
        name: "cp(1,1,1) = sum p(k)",
        range: format!("n <= {horizon}"),
        first_mismatch: first.and_then(|n| mismatch(n, &series.coeffs()[n], &partial[n])),
    });

    let c011 = cp_special(SpecialVariant::Cp011, horizon)?;
    let c001 = cp_special(SpecialVariant::Cp001, horizon)?;
    let p = partition_numbers(horizon)?;
    let first = (0..=horizon).find(|&n| c001[n] != 2 * c011[n] - p[n]);
    checks.push(IdentityCheck {
        name: "cp(0,0,1) = 2 cp(0,1,1) - p(n)",
        range: format!("n <= {horizon}"),
        first_mismatch: first.and_then(|n| mismatch(n, &c001[n], &(2 * c011[n] - p[n]))),
    });

    let enum_limit = horizon.min(15);
    let cp112 = CopartitionCounter::new(CopartitionParams::new(1, 1, 2)?, enum_limit as u64);
    let first = (0..=enum_limit).find(|&n| cp112.count(n as u64) != eo_star_count(2 * n).into());
    checks.push(IdentityCheck {
        name: "cp(1,1,2)(n) = EO*(2n) by enumeration",
        range: format!("n <= {enum_limit}"),
        first_mismatch: first.and_then(|n| mismatch(n, &cp112.count(n as u64), &eo_star_count(2 * n))),
    });

    let series = cp_gf_series(&CopartitionParams::new(1, 1, 2)?, Ring::Integers, horizon)?;
    let eo = eo_star_series(2 * horizon)?;
    let first = (0..=horizon).find(|&n| series.coeffs()[n] != eo.coeffs()[2 * n]);
    checks.push(IdentityCheck {
        name: "cp(1,1,2)(n) = EO*(2n) by nu(q)",
        range: format!("n <= {horizon}"),
        first_mismatch: first.and_then(|n| mismatch(n, &series.coeffs()[n], &eo.coeffs()[2 * n])),
    });

    let failed = checks.iter().any(|c| c.first_mismatch.is_some());
    let text = output::identity_checks(
        checks.iter().map(|c| (c.name, c.range.as_str(), c.first_mismatch.as_deref())),
        format,
    );
    Ok(Outcome { status: if failed { 1 } else { 0 }, output: text })
}
