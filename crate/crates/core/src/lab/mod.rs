//! Congruence claims as data: construction, verification, search and storage.

pub mod catalog;
pub mod claim;
pub mod family;
pub mod numtheory;
pub mod search;
pub mod verify;

pub use catalog::{catalog_load, catalog_save, catalog_save_claims, parse_catalog, shipped_catalog};
pub use claim::{NamedSeries, ProgressionClaim, Rhs, SeriesSource};
pub use family::{build_family, canonical_claims, canonical_families, positive_controls, FamilySpec, Kernel};
pub use numtheory::{is_prime, legendre_symbol, mod_inverse};
pub use search::{search_progressions, search_source, Candidate};
pub use verify::{verify_claim, Counterexample, Verdict, VerificationReport, Verifier, VerifyOptions};
