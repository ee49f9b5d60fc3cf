//! Versioned JSON documents.
//!
//! Field elements are written as coefficient vectors over `F_p`, lowest power
//! first. Polynomial coefficients are written as their ordinal in the sorted
//! list of `F_q` elements, which for prime `q` is the residue itself. Counts
//! that can outgrow 64 bits are decimal strings.

use std::collections::BTreeMap;

use linset_core::blocking::LineRank;
use linset_core::{Field, FieldElement, FieldSpec, LinearSetReport, PolyTuple, ProjectivePoint};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub e: u32,
    pub h: u32,
    pub modulus: Vec<u32>,
}

impl From<&FieldSpec> for FieldDescription {
    fn from(s: &FieldSpec) -> Self {
        FieldDescription { p: s.p, e: s.e, h: s.h, modulus: s.modulus.clone() }
    }
}

impl From<FieldDescription> for FieldSpec {
    fn from(d: FieldDescription) -> Self {
        FieldSpec { p: d.p, e: d.e, h: d.h, modulus: d.modulus }
    }
}

pub fn element(field: &Field, x: FieldElement) -> Vec<u32> {
    field.coeffs(x)
}

pub fn point(field: &Field, p: &ProjectivePoint) -> Vec<Vec<u32>> {
    p.coords().iter().map(|&c| field.coeffs(c)).collect()
}

pub fn tuple(field: &Field, t: &PolyTuple) -> Vec<Vec<u32>> {
    t.entries()
        .iter()
        .map(|f| f.coeffs().iter().map(|&c| field.base_ordinal(c).expect("coefficients lie in F_q") as u32).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointEntry {
    pub coords: Vec<Vec<u32>>,
    pub weight: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub form: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructDoc {
    pub schema: u32,
    pub command: String,
    pub config: ExperimentConfig,
    pub field: FieldDescription,
    pub alpha: Vec<u32>,
    pub s: u32,
    pub k: usize,
    pub size: String,
    pub predicted_size: String,
    /// Entry `i` counts points of weight `i + 1`.
    pub spectrum: Vec<String>,
    pub max_weight: u32,
    pub club: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub points: Option<Vec<PointEntry>>,
}

impl ConstructDoc {
    pub fn point_entries(field: &Field, report: &LinearSetReport) -> Vec<PointEntry> {
        let forms = report.forms();
        report
            .points()
            .iter()
            .enumerate()
            .map(|(i, (p, w))| PointEntry {
                coords: point(field, p),
                weight: *w,
                form: forms.map(|f| tuple(field, &f[i])),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineEntry {
    pub line: Vec<Vec<u32>>,
    pub rank: u32,
}

impl LineEntry {
    pub fn new(field: &Field, l: &LineRank) -> Self {
        LineEntry { line: point(field, &l.line), rank: l.rank }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema: u32,
    pub command: String,
    pub config: ExperimentConfig,
    pub field: FieldDescription,
    pub alpha: Vec<u32>,
    pub size: usize,
    pub blocking: bool,
    pub minimal: bool,
    pub small: bool,
    pub redei_lines: Vec<LineEntry>,
    /// Intersection size → number of lines.
    pub secant_histogram: BTreeMap<u32, u64>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Machine-readable failure written to stderr.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema: u32,
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failed_checks: Vec<String>,
}
