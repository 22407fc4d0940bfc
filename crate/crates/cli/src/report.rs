//! JSON run reports. Every number is a string with 17 significant digits so
//! that parsing a report and writing it again reproduces it byte for byte.

use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use qentropy::inequality::CheckResult;

pub const TOOL: &str = "qentropy";

/// A real number kept in its printed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Num(pub String);

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num(if v.is_finite() {
            format!("{v:.16e}")
        } else if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        })
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub claim: String,
    pub anchor: String,
    pub margin: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub slack: Num,
    pub pass: bool,
}

impl From<&CheckResult> for CheckRecord {
    fn from(r: &CheckResult) -> Self {
        CheckRecord {
            claim: r.claim.clone(),
            anchor: r.anchor.clone(),
            margin: r.worst_margin.into(),
            x: r.location.x.map(Num::from),
            order: r.location.order.map(|o| o.to_string()),
            index: r.location.index,
            slack: r.slack.into(),
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: String,
    pub family: String,
    pub order: String,
    pub n: usize,
    pub t: Num,
    pub g: Num,
    pub entropy: Num,
    pub rank: usize,
    pub label: String,
    pub verdict: String,
    pub margin: Num,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub state0: String,
    pub state1: String,
    pub shots: u64,
    pub seed: u64,
    pub zeros: u64,
    pub ones: u64,
    /// Exact probability of a 0 outcome.
    pub p_zero: Num,
    /// Exact Tr(rho0 rho1).
    pub exact: Num,
    pub estimate: Num,
    /// Allowed |estimate - exact|: 5 / sqrt(shots).
    pub bound: Num,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QStarRecord {
    pub x: Num,
    pub q_star: Num,
    pub ratio: Num,
    pub in_two_three: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub command: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instances: Vec<InstanceRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub estimates: Vec<EstimateRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub qstar: Vec<QStarRecord>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: command.into(),
            pass: true,
            checks: Vec::new(),
            instances: Vec::new(),
            estimates: Vec::new(),
            qstar: Vec::new(),
        }
    }

    /// Recomputes the overall verdict from the records.
    pub fn finish(mut self) -> Self {
        self.pass = self.checks.iter().all(|c| c.pass)
            && self.instances.iter().all(|i| i.pass)
            && self.estimates.iter().all(|e| e.pass);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    #[cfg(test)]
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed report")
    }

    /// Writes to `path`, or to stdout when `path` is None.
    pub fn write(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => std::fs::write(p, self.to_json()).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{}", self.to_json());
                Ok(())
            }
        }
    }
}

pub fn write_checks_csv(path: &Path, checks: &[CheckRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["claim", "anchor", "margin", "x", "order", "pass"])?;
    for c in checks {
        w.write_record([
            c.claim.as_str(),
            c.anchor.as_str(),
            &c.margin.0,
            c.x.as_ref().map_or("", |x| x.0.as_str()),
            c.order.as_deref().unwrap_or(""),
            if c.pass { "true" } else { "false" },
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_qstar_csv(path: &Path, rows: &[QStarRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["x", "q_star", "ratio", "in_two_three"])?;
    for r in rows {
        w.write_record([r.x.0.as_str(), &r.q_star.0, &r.ratio.0, if r.in_two_three { "true" } else { "false" }])?;
    }
    w.flush()?;
    Ok(())
}
