//! JSON report schemas shared by the subcommands. Field order is fixed by
//! struct declaration order so reports are stable for scripting.

use csstk::{CssTReport, DensityClass, MinWeight, QuantumParams};
use serde::Serialize;

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub k: usize,
    pub min_weight: Option<usize>,
    pub min_weight_exact: bool,
    pub is_even: bool,
    pub is_self_orthogonal: bool,
    pub hull_dim: usize,
    pub square_dim: usize,
    pub max_partner_dim: usize,
    pub density: DensityClass,
}

#[derive(Serialize)]
pub struct PartnerReport {
    pub n: usize,
    pub k: usize,
    pub gen: Vec<String>,
}

#[derive(Serialize)]
pub struct PuncturedReport {
    pub removed: Vec<usize>,
    pub is_pair: bool,
    pub params: Option<QuantumParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct CsstJson {
    pub is_pair: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub hull_cond: bool,
    pub subset_ok: bool,
    pub c2_self_orthogonal: bool,
    pub params: Option<QuantumParams>,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<PartnerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub punctured: Option<PuncturedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definitional: Option<String>,
}

impl CsstJson {
    pub fn from_report(report: &CssTReport) -> Self {
        Self {
            is_pair: report.is_pair,
            cond2: report.cond2,
            cond3: report.cond3,
            hull_cond: report.hull_cond,
            subset_ok: report.subset_ok,
            c2_self_orthogonal: report.c2_self_orthogonal,
            params: report.params,
            witness: report.witness.clone(),
            partner: None,
            punctured: None,
            definitional: None,
        }
    }
}

pub fn min_weight_fields(mw: Option<MinWeight>) -> (Option<usize>, bool) {
    match mw {
        Some(MinWeight::Exact(w)) => (Some(w), true),
        Some(MinWeight::NotComputed) | None => (None, false),
    }
}
