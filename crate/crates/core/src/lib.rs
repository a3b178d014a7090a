//! Copartition numbers `cp_{a,b,m}(n)`, truncated q-series arithmetic, and
//! an adjudicator for congruences of copartition counts along arithmetic
//! progressions.

pub mod copartition;
pub mod error;
pub mod lab;
pub mod series;
pub mod special;

pub use copartition::{
    bivariate_gf_check, count_copartitions, cp_gf_series, cp_special, enumerate_copartitions, refined_counts,
    CopartitionCounter, CopartitionParams, CopartitionTriple, RefinedCountTable, SpecialVariant,
};
pub use error::{Error, Result};
pub use series::{euler_product, pochhammer, series_congruent, Ring, Series};
pub use special::{
    divisor_counts, eo_star_count, eo_star_series, nu_series, p_dissect_f, partition_numbers, theta_f,
    ComponentKind, Dissection, DissectionComponent,
};
