//! Exhaustive enumeration of small hypergraph classes, extremal scans and
//! checking of bound claims against them.

mod claims;
mod scan;
mod space;

use num_bigint::BigUint;
use thiserror::Error;

pub use claims::{
    check_claim, find_claim, run_ledger, Claim, ClaimParams, Side, Status, VerificationReport, WitnessCheck, CLAIMS,
};
pub use scan::{
    enumerate, extremal_scan, scan, Enumeration, ExtremalResult, Extreme, ScanOptions, ScanResult, DEFAULT_CAP,
    DEFAULT_MAX_WITNESSES,
};
pub use space::SearchSpace;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("space has {subsets} candidate edge subsets, above the cap of {cap}; pass an override to scan it anyway")]
    SpaceTooLarge { subsets: BigUint, cap: u64 },
    #[error("{n} vertices exceeds the supported maximum of 64")]
    UnsupportedN { n: usize },
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error("search space {0} has no members")]
    EmptySpace(SearchSpace),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("claim `{claim}` needs parameter `{param}`")]
    MissingParam { claim: String, param: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot start worker threads: {0}")]
    ThreadPool(String),
}

/// Fixed-width text table of claim reports.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let header = ["claim", "params", "claimed", "observed", "status", "witness"];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let witness = match &r.witness_check {
                Some(w) if w.confirmed() && w.uniqueness_claimed => format!("{} (unique)", w.family),
                Some(w) if w.confirmed() => w.family.clone(),
                Some(w) if w.attains => format!("{} (not unique: {})", w.family, r.attaining),
                Some(w) => format!("{} (value {})", w.family, w.value),
                None => "-".into(),
            };
            [
                r.claim_id.clone(),
                r.params.to_string(),
                r.claimed.to_string(),
                r.observed.to_string(),
                r.status.to_string(),
                witness,
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for row in &rows {
        out += &line(&row.each_ref().map(String::as_str));
    }
    out
}
