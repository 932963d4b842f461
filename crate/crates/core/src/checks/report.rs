//! Campaign reports and their human and structured renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{Report, Residual};

/// Status of one named property on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStatus {
    pub name: String,
    pub pass: bool,
    /// Nonzero defects, printed exactly; empty when `pass`.
    pub residuals: Vec<Residual>,
}

impl CheckStatus {
    pub fn from_report(name: impl Into<String>, report: Report) -> Self {
        CheckStatus {
            name: name.into(),
            pass: report.is_valid(),
            residuals: report.residuals,
        }
    }

    /// A status comparing two printable values that must agree.
    pub fn equal<T: PartialEq + std::fmt::Debug>(name: &str, lhs: &T, rhs: &T) -> Self {
        let mut report = Report::default();
        if lhs != rhs {
            report.push("lhs", format!("{lhs:?}"));
            report.push("rhs", format!("{rhs:?}"));
        }
        CheckStatus::from_report(name, report)
    }

    pub fn error(name: impl Into<String>, message: impl Into<String>) -> Self {
        let mut report = Report::default();
        report.push("error", message);
        CheckStatus::from_report(name, report)
    }
}

/// Smallest failing bounds found by shrinking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shrunk {
    pub degree: u32,
    pub dim: usize,
    pub descriptor: String,
}

/// One randomized instance of a campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub descriptor: String,
    pub checks: Vec<CheckStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<Shrunk>,
}

impl InstanceReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Outcome of a command. Wall time is only recorded on request so that
/// structured reports of identical runs are byte-identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub seed: u64,
    pub instances: Vec<InstanceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Error)]
#[error("malformed report: {0}")]
pub struct ReportParseError(#[from] serde_json::Error);

/// Output formats of [`VerificationReport::emit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.instances.iter().all(InstanceReport::pass)
    }

    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.pass()).count()
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Structured => serde_json::to_string_pretty(self).expect("reports serialize"),
            Format::Human => self.human(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ReportParseError> {
        Ok(serde_json::from_str(text)?)
    }

    fn human(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let _ = write!(
            out,
            "{} seed={} instances={} failures={} {}",
            self.command,
            self.seed,
            self.instances.len(),
            self.failures(),
            verdict
        );
        if let Some(ms) = self.wall_time_ms {
            let _ = write!(out, " ({ms} ms)");
        }
        out.push('\n');
        for inst in &self.instances {
            let mark = if inst.pass() { "ok" } else { "FAIL" };
            let names: Vec<&str> = inst.checks.iter().map(|c| c.name.as_str()).collect();
            let _ = writeln!(
                out,
                "  #{} {} [{}] {}",
                inst.index,
                mark,
                names.join(", "),
                inst.descriptor
            );
            for check in inst.checks.iter().filter(|c| !c.pass) {
                let _ = writeln!(out, "    {} failed", check.name);
                for r in &check.residuals {
                    let _ = writeln!(out, "      {}: {}", r.name, r.value);
                }
            }
            if let Some(s) = &inst.shrunk {
                let _ = writeln!(
                    out,
                    "    shrunk to degree={} dim={}: {}",
                    s.degree, s.dim, s.descriptor
                );
            }
        }
        out
    }
}
