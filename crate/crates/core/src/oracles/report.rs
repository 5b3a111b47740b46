use std::fmt;

/// Outcome of one named check: `passed` exactly when `measured <= tolerance`
/// (a NaN measurement never passes).
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check_name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Parameters the check ran with, as `key=value` pairs.
    pub context: String,
}

impl VerificationReport {
    pub fn new(
        check_name: impl Into<String>,
        measured: f64,
        tolerance: f64,
        context: impl Into<String>,
    ) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
            context: context.into(),
        }
    }

    /// A check that could not be carried out at all.
    pub fn failed(check_name: impl Into<String>, tolerance: f64, reason: impl fmt::Display) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            measured: f64::NAN,
            tolerance,
            passed: false,
            context: format!("error: {reason}"),
        }
    }

    /// Same measurement judged against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.measured <= tolerance;
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: measured {:e} vs tolerance {:e} [{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_name,
            self.measured,
            self.tolerance,
            self.context
        )
    }
}
