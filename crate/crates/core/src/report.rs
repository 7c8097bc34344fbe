use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::series::{Mismatch, TruncSeries, Truncation};

/// One named comparison inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Compares two series of the same box.
    pub fn series(name: impl Into<String>, lhs: &TruncSeries, rhs: &TruncSeries) -> Result<Check> {
        let mismatch = lhs.first_mismatch(rhs)?;
        Ok(Check {
            name: name.into(),
            equal: mismatch.is_none(),
            mismatch,
            detail: None,
        })
    }

    pub fn flag(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        let detail = detail.into();
        Check {
            name: name.into(),
            equal: ok,
            mismatch: None,
            detail: (!detail.is_empty()).then_some(detail),
        }
    }
}

/// Outcome of checking one identity or space equality inside a box.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    #[serde(rename = "box")]
    pub trunc: Truncation,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub lhs: Option<TruncSeries>,
    #[serde(skip)]
    pub rhs: Option<TruncSeries>,
}

impl VerificationReport {
    /// A report that is `equal` iff every check passes; the headline
    /// mismatch is the first failing check's witness.
    pub fn from_checks(identity: impl Into<String>, trunc: Truncation, checks: Vec<Check>) -> Self {
        let equal = checks.iter().all(|c| c.equal);
        let mismatch = checks
            .iter()
            .find(|c| !c.equal)
            .and_then(|c| c.mismatch.clone());
        VerificationReport {
            identity: identity.into(),
            trunc,
            equal,
            mismatch,
            checks,
            lhs: None,
            rhs: None,
        }
    }

    /// Report for a single series comparison, keeping both sides.
    pub fn compare(
        identity: impl Into<String>,
        lhs: TruncSeries,
        rhs: TruncSeries,
    ) -> Result<Self> {
        let identity = identity.into();
        let check = Check::series(identity.clone(), &lhs, &rhs)?;
        let mut report = VerificationReport::from_checks(identity, lhs.trunc(), vec![check]);
        report.checks.clear();
        report.lhs = Some(lhs);
        report.rhs = Some(rhs);
        Ok(report)
    }

    pub fn with_check(mut self, check: Check) -> Self {
        if !check.equal {
            if self.equal {
                self.mismatch = check.mismatch.clone();
            }
            self.equal = false;
        }
        self.checks.push(check);
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [{}]: {}",
            self.identity,
            self.trunc,
            if self.equal { "equal" } else { "NOT equal" }
        )?;
        if let Some(m) = &self.mismatch {
            writeln!(
                f,
                "  first mismatch at {} word {}: lhs {} vs rhs {}",
                m.exponent, m.word, m.lhs_coeff, m.rhs_coeff
            )?;
        }
        for c in &self.checks {
            write!(f, "  {}: {}", c.name, if c.equal { "ok" } else { "FAILED" })?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
