//! Verification records shared by the checks and the command-line reports.

use crate::error::Error;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    AccuracyError,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Absolute,
    Relative,
    /// `value > target` is required; residual is `target - value` when violated.
    GreaterThan,
}

/// One numerically verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// Human-readable statement of the identity being checked.
    pub identity: String,
    pub value: f64,
    pub target: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub measure: Measure,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    fn build(id: &str, identity: &str, value: f64, target: f64, residual: f64, tol: f64, measure: Measure) -> Self {
        let ok = residual.is_finite() && residual <= tol;
        CheckRecord {
            id: id.to_string(),
            identity: identity.to_string(),
            value,
            target,
            residual,
            tolerance: tol,
            measure,
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
        }
    }

    pub fn absolute(id: &str, identity: &str, value: f64, target: f64, tol: f64) -> Self {
        Self::build(id, identity, value, target, (value - target).abs(), tol, Measure::Absolute)
    }

    pub fn relative(id: &str, identity: &str, value: f64, target: f64, tol: f64) -> Self {
        let r = (value - target).abs() / target.abs().max(f64::MIN_POSITIVE);
        Self::build(id, identity, value, target, r, tol, Measure::Relative)
    }

    /// Strict inequality `value > target`.
    pub fn greater(id: &str, identity: &str, value: f64, target: f64) -> Self {
        let r = if value > target { 0.0 } else { target - value };
        let mut rec = Self::build(id, identity, value, target, r, 0.0, Measure::GreaterThan);
        if value <= target {
            rec.status = Status::Fail;
        }
        rec
    }

    /// A check that could not be evaluated.
    pub fn failed(id: &str, identity: &str, err: &Error, tol: f64) -> Self {
        let (value, status) = match err {
            Error::Accuracy { estimate, .. } => (*estimate, Status::AccuracyError),
            _ => (f64::NAN, Status::Error),
        };
        CheckRecord {
            id: id.to_string(),
            identity: identity.to_string(),
            value,
            target: f64::NAN,
            residual: f64::NAN,
            tolerance: tol,
            measure: Measure::Absolute,
            status,
            note: Some(err.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Run a fallible check, turning errors into failed records.
pub fn guarded<F>(id: &str, identity: &str, tol: f64, f: F) -> CheckRecord
where
    F: FnOnce() -> crate::Result<CheckRecord>,
{
    match f() {
        Ok(r) => r,
        Err(e) => CheckRecord::failed(id, identity, &e, tol),
    }
}
