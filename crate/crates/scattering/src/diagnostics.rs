/// One line of the `diagnose` report.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticRow {
    pub check: String,
    pub parameter: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl DiagnosticRow {
    /// Passes when `residual ≤ threshold`.
    pub fn at_most(check: &str, parameter: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self { check: check.into(), parameter: parameter.into(), residual, threshold, pass: residual <= threshold }
    }

    /// Passes when `residual ≥ threshold` (decay factors, separation ratios).
    pub fn at_least(check: &str, parameter: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self { check: check.into(), parameter: parameter.into(), residual, threshold, pass: residual >= threshold }
    }

    pub const HEADER: [&'static str; 5] = ["check_name", "parameter", "residual", "threshold", "pass"];
}
