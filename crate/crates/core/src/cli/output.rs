//! Result tables in CSV or JSON.

use num_complex::Complex64;
use serde::Serialize;

use crate::result::{BranchFlags, SuperzetaResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub s: Complex64,
    pub z: Complex64,
    pub value: Complex64,
    pub est_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<&'static str>,
    pub branch_flags: BranchFlags,
}

impl Row {
    pub fn from_result(s: Complex64, z: Complex64, r: SuperzetaResult) -> Self {
        Row {
            s,
            z,
            value: r.value,
            est_error: r.est_error,
            quantity: None,
            branch_flags: r.branch_flags,
        }
    }

    pub fn labelled(mut self, quantity: &'static str) -> Self {
        self.quantity = Some(quantity);
        self
    }
}

pub const CSV_HEADER: &str = "s_re,s_im,z_re,z_im,value_re,value_im,est_error";

pub fn render_rows(rows: &[Row], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{:?},{:?},{:?},{:?},{:?},{:?},{:?}\n",
                    r.s.re, r.s.im, r.z.re, r.z.im, r.value.re, r.value.im, r.est_error
                ));
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
            out
        }
    }
}

/// Outcome of a single verification check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            error,
            tolerance,
            passed: error <= tolerance,
        }
    }

    /// An exact (boolean) check.
    pub fn exact(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            error: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        Report {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("suite,check,error,tolerance,passed\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{:e},{:e},{}\n",
                    report.suite, c.name, c.error, c.tolerance, c.passed
                ));
            }
            out
        }
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
    }
}
