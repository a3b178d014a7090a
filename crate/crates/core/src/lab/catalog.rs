//! JSON claim catalogs and verification report files.
//!
//! A catalog is `{"claims": [claim, ...]}`; a report file is
//! `{"reports": [report, ...]}`. Loading accepts either and yields the claims,
//! so a saved report can be fed back in as a catalog.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::claim::ProgressionClaim;
use super::verify::VerificationReport;
use crate::error::{Error, Result};

const SHIPPED: &str = include_str!("../../data/catalog.json");

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    claims: Option<Vec<ProgressionClaim>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reports: Option<Vec<ReportClaim>>,
}

#[derive(Serialize, Deserialize)]
struct ReportClaim {
    claim: ProgressionClaim,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    reports: &'a [VerificationReport],
}

pub fn parse_catalog(text: &str) -> Result<Vec<ProgressionClaim>> {
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match (file.claims, file.reports) {
        (Some(claims), None) => Ok(claims),
        (None, Some(reports)) => Ok(reports.into_iter().map(|r| r.claim).collect()),
        _ => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected exactly one of \"claims\" or \"reports\"".into(),
        }),
    }
}

pub fn catalog_load(path: impl AsRef<Path>) -> Result<Vec<ProgressionClaim>> {
    parse_catalog(&fs::read_to_string(path)?)
}

pub fn catalog_to_string(claims: &[ProgressionClaim]) -> String {
    let file = CatalogFile { claims: Some(claims.to_vec()), reports: None };
    let mut text = serde_json::to_string_pretty(&file).expect("claims serialize");
    text.push('\n');
    text
}

pub fn catalog_save_claims(claims: &[ProgressionClaim], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, catalog_to_string(claims))?;
    Ok(())
}

pub fn reports_to_string(reports: &[VerificationReport]) -> String {
    let mut text = serde_json::to_string_pretty(&ReportFile { reports }).expect("reports serialize");
    text.push('\n');
    text
}

/// Writes a report file.
pub fn catalog_save(reports: &[VerificationReport], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, reports_to_string(reports))?;
    Ok(())
}

/// The catalog bundled with the crate.
pub fn shipped_catalog() -> Vec<ProgressionClaim> {
    parse_catalog(SHIPPED).expect("bundled catalog is well-formed")
}

pub fn shipped_catalog_text() -> &'static str {
    SHIPPED
}
