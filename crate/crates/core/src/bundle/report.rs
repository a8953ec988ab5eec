use std::fmt;

/// Which structural condition a finding is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Degree,
    LinearBlock,
    BaseJacobian,
    Inverse,
    Cocycle,
    TowerShape,
    FilterableLinear,
    FilterableDegree,
    Presentation,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Degree => "degree",
            Check::LinearBlock => "linear-block",
            Check::BaseJacobian => "base-jacobian",
            Check::Inverse => "inverse",
            Check::Cocycle => "cocycle",
            Check::TowerShape => "tower-shape",
            Check::FilterableLinear => "filterable-linear",
            Check::FilterableDegree => "filterable-degree",
            Check::Presentation => "presentation",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Finding {
    pub check: Check,
    /// Chart path and coordinate, e.g. `U->V: Z`.
    pub location: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), findings: Vec::new() }
    }

    pub fn push(&mut self, check: Check, location: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.findings.push(Finding { check, location: location.into(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.findings.extend(other.findings);
    }

    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.passed)
    }

    pub fn count(&self, check: Check) -> usize {
        self.findings.iter().filter(|f| f.check == check).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report {}: {}", self.subject, if self.passed() { "pass" } else { "fail" })?;
        for x in &self.findings {
            writeln!(
                f,
                "  [{}] {} {}: {}",
                if x.passed { "pass" } else { "FAIL" },
                x.check,
                x.location,
                x.detail
            )?;
        }
        Ok(())
    }
}
