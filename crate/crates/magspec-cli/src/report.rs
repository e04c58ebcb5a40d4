//! Plain-text run reports: one line per asserted check with its measured
//! value, tolerance, and pass/fail status, plus free-form data notes for
//! quantities that are reported but deliberately not asserted.

/// One asserted check.
#[derive(Clone, Debug)]
pub struct Check {
    /// Stable, behavior-describing identifier (CSV-safe, no spaces).
    pub id: String,
    pub passed: bool,
    /// Measured quantity the tolerance applies to (signed excess for
    /// one-sided checks, absolute deviation for two-sided ones).
    pub measured: f64,
    pub tolerance: f64,
    /// Human-readable context with the raw values.
    pub detail: String,
}

/// Aggregated result of one command run.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    /// Data lines reported without any assertion attached.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    /// Records an arbitrary pre-evaluated check.
    pub fn push(
        &mut self,
        id: impl Into<String>,
        passed: bool,
        measured: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            id: id.into(),
            passed,
            measured,
            tolerance,
            detail: detail.into(),
        });
    }

    /// Asserts `lhs ≤ rhs + tol`; `measured` is the signed excess
    /// `lhs − rhs`.
    pub fn check_le(
        &mut self,
        id: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tol: f64,
        detail: impl Into<String>,
    ) {
        let excess = lhs - rhs;
        self.push(id, lhs <= rhs + tol, excess, tol, detail);
    }

    /// Asserts `|value − target| ≤ tol`; `measured` is the absolute
    /// deviation.
    pub fn check_abs(
        &mut self,
        id: impl Into<String>,
        value: f64,
        target: f64,
        tol: f64,
        detail: impl Into<String>,
    ) {
        let dev = (value - target).abs();
        self.push(id, dev <= tol, dev, tol, detail);
    }

    /// Records a data line without asserting anything.
    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect()
    }

    /// Finds a check by id (used by tests to pull measured values).
    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Renders the report deterministically, in insertion order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report: {}\n", self.title));
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "[{status}] {}  measured={} tolerance={}  {}\n",
                c.id, c.measured, c.tolerance, c.detail
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("summary: {} checks, {} failed\n", self.checks.len(), self.failed()));
        out
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}
