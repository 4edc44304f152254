use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Where an analytic target comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Paper,
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|estimate - target| <= tolerance`
    TwoSided,
    /// `estimate <= target + tolerance`
    AtMost,
    /// `estimate >= target - tolerance`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub target: f64,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        estimate: f64,
        std_error: f64,
        target: f64,
        provenance: Provenance,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        let pass = match comparison {
            Comparison::TwoSided => (estimate - target).abs() <= tolerance,
            Comparison::AtMost => estimate <= target + tolerance,
            Comparison::AtLeast => estimate >= target - tolerance,
        };
        Self {
            name: name.into(),
            estimate,
            std_error,
            target,
            provenance,
            tolerance,
            comparison,
            pass,
        }
    }
}

/// Per-replicate values, one row per replicate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawData {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl RawData {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(std::iter::once("replicate").chain(self.columns.iter().map(String::as_str)))?;
        for (i, row) in self.rows.iter().enumerate() {
            w.write_record(std::iter::once(i.to_string()).chain(row.iter().map(f64::to_string)))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub model: String,
    pub seed: u64,
    pub replicates: usize,
    /// Analytic constants of the construction under test.
    pub params: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub runtime_secs: f64,
    #[serde(skip)]
    pub raw: RawData,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Checks as CSV rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "kind",
            "check",
            "estimate",
            "std_error",
            "target",
            "provenance",
            "tolerance",
            "comparison",
            "pass",
        ])?;
        for c in &self.checks {
            let provenance = serde_json::to_value(c.provenance)?;
            let comparison = serde_json::to_value(c.comparison)?;
            w.write_record([
                self.kind.clone(),
                c.name.clone(),
                c.estimate.to_string(),
                c.std_error.to_string(),
                c.target.to_string(),
                provenance.as_str().unwrap_or_default().to_string(),
                c.tolerance.to_string(),
                comparison.as_str().unwrap_or_default().to_string(),
                c.pass.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        let c = |e, cmp| Check::new("x", e, 0.1, 1.0, Provenance::Paper, 0.3, cmp).pass;
        assert!(c(1.2, Comparison::TwoSided) && !c(1.4, Comparison::TwoSided));
        assert!(c(1.3, Comparison::AtMost) && !c(1.31, Comparison::AtMost) && c(-5.0, Comparison::AtMost));
        assert!(c(0.7, Comparison::AtLeast) && !c(0.69, Comparison::AtLeast) && c(9.0, Comparison::AtLeast));
    }

    #[test]
    fn provenance_labels() {
        assert_eq!(serde_json::to_string(&Provenance::ClosedForm).unwrap(), "\"closed-form\"");
        assert_eq!(serde_json::to_string(&Comparison::AtLeast).unwrap(), "\"at_least\"");
    }
}
