//! Report records shared by the verification suite and the command line
//! front end.

use serde::{Deserialize, Serialize};

/// One verified case. `lhs`/`rhs` hold the compared values (scalars or
/// quaternion arrays); `abs_error` is compared against `tol`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    /// Name of the property the case checks, quoted on failure.
    pub paper_ref: String,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub abs_error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CaseReport {
    pub fn scalar(
        case: impl Into<String>,
        property: impl Into<String>,
        lhs: f64,
        rhs: f64,
        abs_error: f64,
        tol: f64,
    ) -> Self {
        Self {
            case: case.into(),
            paper_ref: property.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_error,
            tol,
            pass: abs_error <= tol,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.case,
            self.paper_ref,
            escape_csv(&self.lhs.to_string()),
            escape_csv(&self.rhs.to_string()),
            self.abs_error,
            self.tol,
            self.pass
        )
    }
}

pub const CSV_HEADER: &str = "case,paper_ref,lhs,rhs,abs_error,tol,pass";

fn escape_csv(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Single-formula verification record used by the quadrature commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormulaReport {
    pub formula: String,
    pub config: serde_json::Value,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub abs_error: f64,
    pub pass: bool,
}
