//! Serializable reports and their CSV projections.  Field order is fixed by
//! the struct definitions, so a given config always produces byte-identical
//! output.

use serde::Serialize;

use growthlab::{CoverResult, GrowthEstimate, GrowthRecord, WitnessReport};

use crate::error::CliError;

#[derive(Serialize)]
pub struct GrowthReport {
    pub records: Vec<GrowthRecord>,
    /// Absent when the radius range is too short for a log-log fit.
    pub estimate: Option<GrowthEstimate>,
    pub formula_degree: u64,
}

#[derive(Serialize)]
pub struct SetReport {
    pub size: usize,
    pub elements: Vec<Vec<i64>>,
}

#[derive(Serialize)]
pub struct CoverReport {
    pub method: String,
    pub size: usize,
    pub exact: bool,
    /// The `|EF|/|F|` Ruzsa guarantee as an exact fraction, when applicable.
    pub bound: Option<String>,
    pub verified: bool,
    pub multiplier_size: usize,
    pub translates: Vec<Vec<i64>>,
}

impl CoverReport {
    pub fn from_cover(method: &str, cover: &CoverResult) -> Self {
        CoverReport {
            method: method.to_string(),
            size: cover.size(),
            exact: cover.exact,
            bound: cover.bound.map(|b| format!("{}/{}", b.numer(), b.denom())),
            // Construction verifies every cover before returning it.
            verified: true,
            multiplier_size: cover.multiplier.len(),
            translates: cover.translates.coord_rows(),
        }
    }
}

#[derive(Serialize)]
pub struct ProfileEntryReport {
    pub h: u32,
    pub l: usize,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct ProfileReport {
    pub r: u32,
    pub entries: Vec<ProfileEntryReport>,
    pub truncated: Option<String>,
}

#[derive(Serialize)]
pub struct InverseLengthReport {
    pub element: Vec<i64>,
    pub length: Option<u32>,
}

#[derive(Serialize)]
pub struct PaddingReport {
    pub p: u32,
    pub representatives: Vec<Vec<i64>>,
    pub translates: Vec<Vec<i64>>,
    pub checked_h: Vec<u32>,
}

#[derive(Serialize)]
pub struct SemigroupReport {
    pub status: String,
    pub p: Option<u32>,
    pub inverse_lengths: Vec<InverseLengthReport>,
    pub q: Option<u32>,
    pub padding: Option<PaddingReport>,
}

#[derive(Serialize)]
pub struct InnerBallReport {
    pub theta: String,
    pub checks: Vec<InnerBallEntry>,
    pub cover: Option<CoverReport>,
}

#[derive(Serialize)]
pub struct InnerBallEntry {
    pub h: u32,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct NormalizationReport {
    pub element: Vec<i64>,
    pub status: String,
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct FmReport {
    pub normalization: Vec<NormalizationReport>,
    pub all_proven: bool,
    pub power_check: Option<FmPowerReport>,
    pub lift: Option<FmLiftOut>,
}

#[derive(Serialize)]
pub struct FmPowerReport {
    pub holds: bool,
    pub truncation: u32,
    pub rhs_truncation: u32,
    pub sigma: u32,
    pub forward_included: bool,
    pub backward_included: bool,
    pub lhs_size: usize,
}

#[derive(Serialize)]
pub struct FmLiftOut {
    pub cover: CoverReport,
    pub truncation: u32,
    pub rhs_truncation: u32,
    pub verified: bool,
}

pub enum Report {
    Growth(GrowthReport),
    Set(SetReport),
    Cover(CoverReport),
    Profile(ProfileReport),
    Semigroup(SemigroupReport),
    InnerBall(InnerBallReport),
    Fm(FmReport),
    Witness(WitnessReport),
}

impl Report {
    pub fn to_json(&self) -> Result<String, CliError> {
        let json = match self {
            Report::Growth(r) => serde_json::to_string_pretty(r),
            Report::Set(r) => serde_json::to_string_pretty(r),
            Report::Cover(r) => serde_json::to_string_pretty(r),
            Report::Profile(r) => serde_json::to_string_pretty(r),
            Report::Semigroup(r) => serde_json::to_string_pretty(r),
            Report::InnerBall(r) => serde_json::to_string_pretty(r),
            Report::Fm(r) => serde_json::to_string_pretty(r),
            Report::Witness(r) => serde_json::to_string_pretty(r),
        }
        .map_err(|e| CliError::Internal(format!("report serialization failed: {e}")))?;
        Ok(json + "\n")
    }

    /// Fixed CSV projections: `growth` is `n,size`, `profile` is
    /// `r,h,l_h,exact`, and set-valued reports emit one coordinate row per
    /// element.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = String::new();
        match self {
            Report::Growth(r) => {
                out.push_str("n,size\n");
                for rec in &r.records {
                    out.push_str(&format!("{},{}\n", rec.n, rec.size));
                }
            }
            Report::Profile(r) => {
                out.push_str("r,h,l_h,exact\n");
                for e in &r.entries {
                    out.push_str(&format!("{},{},{},{}\n", r.r, e.h, e.l, e.exact));
                }
            }
            Report::Set(r) => push_coord_rows(&mut out, &r.elements),
            Report::Cover(r) => push_coord_rows(&mut out, &r.translates),
            _ => {
                return Err(CliError::Config(
                    "this command reports JSON only; use --format json".into(),
                ))
            }
        }
        Ok(out)
    }
}

fn push_coord_rows(out: &mut String, rows: &[Vec<i64>]) {
    if let Some(first) = rows.first() {
        let header: Vec<String> = (0..first.len()).map(|i| format!("c{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
    }
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
}
