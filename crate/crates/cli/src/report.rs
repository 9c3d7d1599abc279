//! Check outcomes and output files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, but the scenario lists the check under `expect_fail`.
    ExpectedFail,
    /// Listed under `expect_fail` yet passed.
    UnexpectedPass,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "XFAIL",
            Status::UnexpectedPass => "XPASS",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, expect_fail: bool, detail: String) -> Self {
        let status = match (pass, expect_fail) {
            (true, false) => Status::Pass,
            (false, false) => Status::Fail,
            (false, true) => Status::ExpectedFail,
            (true, true) => Status::UnexpectedPass,
        };
        Check {
            name: name.to_owned(),
            status,
            detail,
        }
    }
}

/// Prints one line per check; true when nothing failed.
pub fn summarize(checks: &[Check]) -> bool {
    for c in checks {
        println!("{} {}: {}", c.status.label(), c.name, c.detail);
    }
    checks.iter().all(|c| c.status != Status::Fail)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn csv_writer(dir: &Path, name: &str) -> Result<csv::Writer<fs::File>> {
    let path = dir.join(name);
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .with_context(|| format!("creating {}", path.display()))
}

/// Empty for a missing value.
pub fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}
