//! Scenario files.

use std::fs;
use std::path::{Path, PathBuf};

use radial_sw::PseudoRiemannData;
use serde::Deserialize;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: PathBuf, source: toml::de::Error },
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub data: Option<DataSection>,
    pub t_max: Option<f64>,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub verify: VerifySection,
    pub oracle: Option<OracleSection>,
    #[serde(default)]
    pub example: ExampleSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    pub n: u32,
    pub radius: f64,
    pub rho_l: f64,
    pub u_l: f64,
    pub rho_r: f64,
    pub u_r: f64,
}

/// Either an explicit list or an evenly spaced range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    List(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::List(v) => v.clone(),
            Axis::Range { start, stop, count } => match count {
                0 => Vec::new(),
                1 => vec![*start],
                _ => (0..*count)
                    .map(|k| {
                        if k + 1 == *count {
                            *stop
                        } else {
                            start + (stop - start) * k as f64 / (count - 1) as f64
                        }
                    })
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub r: Option<Axis>,
    pub t: Option<Axis>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub entropy: bool,
    pub conservation: bool,
    pub weak_residual: bool,
    /// Truncation radius for the mass and momentum budgets.
    pub r_max: Option<f64>,
    pub eps0: f64,
    pub halvings: u32,
    /// Checks whose failure is expected and does not fail the run.
    pub expect_fail: Vec<String>,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection {
            entropy: true,
            conservation: true,
            weak_residual: true,
            r_max: None,
            eps0: 1e-2,
            halvings: 6,
            expect_fail: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub cells: Vec<usize>,
    pub r_max: f64,
    pub times: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExampleSection {
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
    pub residual_tol: f64,
}

impl Default for ExampleSection {
    fn default() -> Self {
        ExampleSection {
            t_start: 0.1,
            t_end: 5.0,
            samples: 491,
            residual_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            ConfigError::Parse { source, .. } => ConfigError::Parse {
                path: path.to_owned(),
                source,
            },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let scenario: Scenario = toml::from_str(text).map_err(|source| ConfigError::Parse {
            path: PathBuf::new(),
            source,
        })?;
        if scenario.schema_version != SCHEMA_VERSION {
            return Err(ConfigError::Schema(scenario.schema_version));
        }
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        for (name, axis) in [("grid.r", &self.grid.r), ("grid.t", &self.grid.t)] {
            if let Some(axis) = axis {
                check_sorted(name, &axis.values())?;
            }
        }
        if let Some(t) = self.t_max {
            if !(t > 0.0 && t.is_finite()) {
                return Err(invalid("t_max must be positive and finite"));
            }
        }
        let v = &self.verify;
        if !(v.eps0 > 0.0) || v.halvings == 0 || v.halvings > 20 {
            return Err(invalid("verify.eps0 must be positive and verify.halvings in 1..=20"));
        }
        if let Some(o) = &self.oracle {
            if o.cells.is_empty() || o.cells.iter().any(|&c| c < 2) {
                return Err(invalid("oracle.cells must list counts of at least 2"));
            }
            check_sorted("oracle.times", &o.times)?;
        }
        let e = &self.example;
        if !(e.t_start > 0.0 && e.t_end > e.t_start) || e.samples < 2 || !(e.residual_tol > 0.0) {
            return Err(invalid(
                "example needs 0 < t_start < t_end, samples >= 2, residual_tol > 0",
            ));
        }
        Ok(())
    }

    pub fn data(&self) -> Result<PseudoRiemannData, ConfigError> {
        let d = self.data.ok_or_else(|| invalid("missing [data] section"))?;
        PseudoRiemannData::new(d.n, d.radius, d.rho_l, d.u_l, d.rho_r, d.u_r).map_err(|e| invalid(e.to_string()))
    }

    pub fn t_max(&self) -> Result<f64, ConfigError> {
        self.t_max.ok_or_else(|| invalid("missing t_max"))
    }

    pub fn r_grid(&self) -> Result<Vec<f64>, ConfigError> {
        self.grid
            .r
            .as_ref()
            .map(Axis::values)
            .ok_or_else(|| invalid("missing grid.r"))
    }

    pub fn t_grid(&self) -> Result<Vec<f64>, ConfigError> {
        self.grid
            .t
            .as_ref()
            .map(Axis::values)
            .ok_or_else(|| invalid("missing grid.t"))
    }

    pub fn oracle(&self) -> Result<&OracleSection, ConfigError> {
        self.oracle.as_ref().ok_or_else(|| invalid("missing [oracle] section"))
    }

    pub fn expects_failure(&self, check: &str) -> bool {
        self.verify.expect_fail.iter().any(|c| c == check)
    }
}

fn check_sorted(name: &str, values: &[f64]) -> Result<(), ConfigError> {
    if values.is_empty() {
        return Err(invalid(format!("{name} must not be empty")));
    }
    if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid(format!("{name} must be finite and strictly increasing")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_axis_hits_endpoints() {
        let a = Axis::Range {
            start: 0.0,
            stop: 1.0,
            count: 4,
        };
        assert_eq!(a.values(), vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]);
    }

    #[test]
    fn schema_version_is_checked() {
        assert!(matches!(
            Scenario::parse("schema_version = 7"),
            Err(ConfigError::Schema(7))
        ));
        assert!(Scenario::parse("schema_version = 1").is_ok());
    }

    #[test]
    fn unsorted_grid_is_rejected() {
        let text = "schema_version = 1\n[grid]\nr = [1.0, 0.5]\n";
        assert!(matches!(Scenario::parse(text), Err(ConfigError::Invalid(_))));
    }
}
