//! Experiment configuration: TOML files, command-line overrides and the
//! resolved form echoed into every report.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (expected json or csv)")),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Size,
    Spectrum,
    ProjectionAgreement,
    Blocking,
    Redei,
    Secants,
    SpectraSolver,
    CrossRatio,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Size,
        Check::Spectrum,
        Check::ProjectionAgreement,
        Check::Blocking,
        Check::Redei,
        Check::Secants,
        Check::SpectraSolver,
        Check::CrossRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Size => "size",
            Check::Spectrum => "spectrum",
            Check::ProjectionAgreement => "projection-agreement",
            Check::Blocking => "blocking",
            Check::Redei => "redei",
            Check::Secants => "secants",
            Check::SpectraSolver => "spectra-solver",
            Check::CrossRatio => "cross-ratio",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Every field optional; one layer of the precedence stack.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub h: Option<u32>,
    pub modulus: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub s: Option<u32>,
    pub partition: Option<Vec<usize>>,
    pub format: Option<Format>,
    pub checks: Option<Vec<Check>>,
    pub points: Option<bool>,
}

impl PartialConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::config(format!("bad config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: PartialConfig) -> PartialConfig {
        PartialConfig {
            p: self.p.or(lower.p),
            e: self.e.or(lower.e),
            h: self.h.or(lower.h),
            modulus: self.modulus.or(lower.modulus),
            seed: self.seed.or(lower.seed),
            s: self.s.or(lower.s),
            partition: self.partition.or(lower.partition),
            format: self.format.or(lower.format),
            checks: self.checks.or(lower.checks),
            points: self.points.or(lower.points),
        }
    }

    pub fn resolve(self, default_checks: &[Check]) -> Result<ExperimentConfig, CliError> {
        let p = self.p.ok_or_else(|| CliError::config("missing field parameter `p`"))?;
        let h = self.h.ok_or_else(|| CliError::config("missing field parameter `h`"))?;
        let partition = self.partition.ok_or_else(|| CliError::config("missing `partition`"))?;
        let mut checks = self.checks.unwrap_or_else(|| default_checks.to_vec());
        checks.sort();
        checks.dedup();
        Ok(ExperimentConfig {
            p,
            e: self.e.unwrap_or(1),
            h,
            modulus: self.modulus,
            seed: self.seed,
            s: self.s.unwrap_or(h),
            partition,
            format: self.format.unwrap_or_default(),
            checks,
            points: self.points.unwrap_or(false),
        })
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub p: u32,
    pub e: u32,
    pub h: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub s: u32,
    pub partition: Vec<usize>,
    pub format: Format,
    pub checks: Vec<Check>,
    pub points: bool,
}

impl ExperimentConfig {
    pub fn has(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }

    /// Deterministic file stem, e.g. `construct-p2-e1-h5-s5-t2_3`.
    pub fn file_stem(&self, command: &str) -> String {
        let parts: Vec<String> = self.partition.iter().map(|t| t.to_string()).collect();
        let mut stem = format!("{command}-p{}-e{}-h{}-s{}-t{}", self.p, self.e, self.h, self.s, parts.join("_"));
        if let Some(seed) = self.seed {
            stem.push_str(&format!("-seed{seed}"));
        }
        stem
    }
}

/// One entry of a batch file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchEntry {
    pub command: String,
    pub name: Option<String>,
    pub p: Option<u32>,
    pub e: Option<u32>,
    pub h: Option<u32>,
    pub modulus: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub s: Option<u32>,
    pub partition: Option<Vec<usize>>,
    pub format: Option<Format>,
    pub checks: Option<Vec<Check>>,
    pub points: Option<bool>,
}

impl BatchEntry {
    pub fn partial(&self) -> PartialConfig {
        PartialConfig {
            p: self.p,
            e: self.e,
            h: self.h,
            modulus: self.modulus.clone(),
            seed: self.seed,
            s: self.s,
            partition: self.partition.clone(),
            format: self.format,
            checks: self.checks.clone(),
            points: self.points,
        }
    }
}

/// Batch file: shared `defaults` and a list of `experiment` tables.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchFile {
    #[serde(default)]
    pub defaults: PartialConfig,
    #[serde(default)]
    pub experiment: Vec<BatchEntry>,
}

impl BatchFile {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::config(format!("bad batch file: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = PartialConfig::from_toml_str("p = 3\nh = 4\npartition = [1, 2]\nformat = \"csv\"\n").unwrap();
        let flags = PartialConfig { p: Some(2), ..Default::default() };
        let c = flags.over(file).resolve(&[Check::Size]).unwrap();
        assert_eq!((c.p, c.e, c.h, c.s), (2, 1, 4, 4));
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.checks, vec![Check::Size]);
    }

    #[test]
    fn checks_parse_in_kebab_case() {
        let c = PartialConfig::from_toml_str("checks = [\"cross-ratio\", \"size\", \"size\"]").unwrap();
        let r = PartialConfig { p: Some(2), h: Some(3), partition: Some(vec![1, 2]), ..c }.resolve(&[]).unwrap();
        assert_eq!(r.checks, vec![Check::Size, Check::CrossRatio]);
        assert_eq!("projection-agreement".parse::<Check>(), Ok(Check::ProjectionAgreement));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(PartialConfig::from_toml_str("q = 4").is_err());
    }

    #[test]
    fn missing_partition_is_reported() {
        let err = PartialConfig { p: Some(2), h: Some(3), ..Default::default() }.resolve(&[]).unwrap_err();
        assert!(err.message.contains("partition"));
    }
}
