//! Pass/fail records for identity checks.

use serde::Serialize;

use crate::linalg::SuperVector;
use crate::series::{Series, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_leading_monomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Report {
        Report { check: check.into(), status: Status::Pass, residual_leading_monomial: None, witness: None, degree: None, detail: None }
    }

    pub fn fail(check: impl Into<String>, witness: impl Into<String>) -> Report {
        Report { status: Status::Fail, witness: Some(witness.into()), ..Report::pass(check) }
    }

    pub fn skipped(check: impl Into<String>, reason: impl Into<String>) -> Report {
        Report { status: Status::Skipped, detail: Some(reason.into()), ..Report::pass(check) }
    }

    pub fn with_degree(mut self, d: usize) -> Report {
        self.degree = Some(d);
        self
    }

    pub fn with_detail(mut self, s: impl Into<String>) -> Report {
        self.detail = Some(s.into());
        self
    }

    pub fn with_residual(mut self, vars: &Vars, s: &Series) -> Report {
        if let Some((m, c)) = s.leading() {
            self.residual_leading_monomial = Some(Series::monomial(m, c).to_string_with(vars));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Builds a report from a residual series: pass iff it vanishes.
    pub fn from_residual(check: impl Into<String>, vars: &Vars, residual: &Series, witness: &str) -> Report {
        if residual.is_zero() {
            Report::pass(check)
        } else {
            Report::fail(check, witness).with_residual(vars, residual)
        }
    }

    /// Builds a report from a residual vector: pass iff every coordinate vanishes.
    pub fn from_vector(check: impl Into<String>, vars: &Vars, residual: &SuperVector, witness: &str) -> Report {
        match residual.first_nonzero() {
            None => Report::pass(check),
            Some((i, s)) => Report::fail(check, format!("{witness}; coordinate {i}")).with_residual(vars, &s),
        }
    }
}

/// Merges several sub-reports into one named report: the first failure wins.
pub fn combine(check: impl Into<String>, parts: Vec<Report>) -> Report {
    let check = check.into();
    if let Some(f) = parts.iter().find(|r| r.failed()) {
        return Report { check, ..f.clone() };
    }
    if !parts.is_empty() && parts.iter().all(|r| r.status == Status::Skipped) {
        return Report { check, ..parts[0].clone() };
    }
    Report::pass(check)
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub fn to_json(reports: &[Report]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}
