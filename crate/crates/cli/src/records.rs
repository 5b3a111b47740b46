//! One record type per command. Floats are written in shortest round-trip
//! form, so reading a record back gives the identical `f64`.

use std::io::{self, Write};

use laplext::oracles::VerificationReport;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelRecord {
    pub kernel: String,
    pub y: f64,
    pub target: f64,
    pub source: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// `value` and `error_estimate` are empty (CSV) or null (JSON) for cells
/// whose solver failed; `error` then says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub problem: String,
    pub y: f64,
    pub target: f64,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub converged: bool,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub check: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub context: String,
}

impl From<&VerificationReport> for VerifyRecord {
    fn from(r: &VerificationReport) -> Self {
        VerifyRecord {
            check: r.check_name.clone(),
            measured: r.measured,
            tolerance: r.tolerance,
            passed: r.passed,
            context: r.context.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub study: String,
    pub step: usize,
    pub parameter: f64,
    pub gap: f64,
}

pub(crate) fn write_csv<W: Write, R: Serialize>(sink: W, records: &[R]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    for r in records {
        w.serialize(r).map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
    }
    w.flush()
}
