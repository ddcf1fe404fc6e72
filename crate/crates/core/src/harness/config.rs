//! Run configuration: built-in defaults, an optional JSON file, then flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::algebra::Region;
use crate::topology::is_prime;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad config {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(ConfigError::Invalid(format!("unknown format {s:?} (json|text)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Text => "text",
        })
    }
}

/// Accepts either `"K,L,M"` or `{"k_cap":K,"l_cap":L,"m_cap":M}`.
fn region_de<'de, D: Deserializer<'de>>(d: D) -> Result<Region, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Text(String),
        Caps { k_cap: u64, l_cap: u64, m_cap: u64 },
    }
    match Repr::deserialize(d)? {
        Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        Repr::Caps { k_cap, l_cap, m_cap } => Ok(Region::new(k_cap, l_cap, m_cap)),
    }
}

/// Truncations used by the suites whose checks are sized separately from
/// the default region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteRegions {
    #[serde(deserialize_with = "region_de")]
    pub star: Region,
    pub star_bcap: u64,
    #[serde(deserialize_with = "region_de")]
    pub zero_assoc: Region,
    #[serde(deserialize_with = "region_de")]
    pub green: Region,
    #[serde(deserialize_with = "region_de")]
    pub idempotent: Region,
    #[serde(deserialize_with = "region_de")]
    pub stability_cover: Region,
    #[serde(deserialize_with = "region_de")]
    pub stability_search: Region,
    #[serde(deserialize_with = "region_de")]
    pub round_trip: Region,
    #[serde(deserialize_with = "region_de")]
    pub tau: Region,
    #[serde(deserialize_with = "region_de")]
    pub zero_topology: Region,
    #[serde(deserialize_with = "region_de")]
    pub fix: Region,
}

impl Default for SuiteRegions {
    fn default() -> Self {
        SuiteRegions {
            star: Region::cube(3),
            star_bcap: 3,
            zero_assoc: Region::cube(3),
            green: Region::cube(2),
            idempotent: Region::cube(6),
            stability_cover: Region::cube(6),
            stability_search: Region::cube(8),
            round_trip: Region::cube(8),
            tau: Region::cube(3),
            zero_topology: Region::new(7, 3, 7),
            fix: Region::new(5, 3, 5),
        }
    }
}

impl SuiteRegions {
    fn set_all(&mut self, r: Region) {
        for slot in [
            &mut self.star,
            &mut self.zero_assoc,
            &mut self.green,
            &mut self.idempotent,
            &mut self.stability_cover,
            &mut self.stability_search,
            &mut self.round_trip,
            &mut self.tau,
            &mut self.zero_topology,
            &mut self.fix,
        ] {
            *slot = r;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(deserialize_with = "region_de")]
    pub region: Region,
    pub bcap: u64,
    pub primes: Vec<u64>,
    pub alpha_min: u32,
    pub alpha_max: u32,
    pub lambda_factor: u64,
    pub witness_maxlen: usize,
    pub format: OutputFormat,
    pub workers: usize,
    /// Seed for the random-word part of the confluence suite.
    pub seed: u64,
    pub suite_regions: SuiteRegions,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            region: Region::cube(4),
            bcap: 4,
            primes: vec![2, 3, 5],
            alpha_min: 1,
            alpha_max: 3,
            lambda_factor: 4,
            witness_maxlen: 6,
            format: OutputFormat::Json,
            workers: 1,
            seed: 0x5eed_2024,
            suite_regions: SuiteRegions::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|source| ConfigError::Json { path: origin.to_string(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: origin.clone(), source })?;
        Self::from_json(&text, &origin)
    }

    /// Use `r` for every region-driven check.
    pub fn set_region_everywhere(&mut self, r: Region) {
        self.region = r;
        self.suite_regions.set_all(r);
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if self.primes.is_empty() {
            return bad("primes must not be empty".into());
        }
        if let Some(p) = self.primes.iter().find(|p| !is_prime(**p)) {
            return bad(format!("{p} is not prime"));
        }
        if self.alpha_min == 0 || self.alpha_min > self.alpha_max {
            return bad(format!("need 1 <= alpha_min <= alpha_max, got {}..{}", self.alpha_min, self.alpha_max));
        }
        for &p in &self.primes {
            let step = p.checked_pow(self.alpha_max);
            if step.and_then(|s| s.checked_mul(self.lambda_factor)).is_none() {
                return bad(format!("lambda_factor * {p}^{} overflows", self.alpha_max));
            }
        }
        if self.lambda_factor == 0 {
            return bad("lambda_factor must be at least 1".into());
        }
        if self.witness_maxlen == 0 {
            return bad("witness_maxlen must be at least 1".into());
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.region, Region::cube(4));
        assert_eq!(cfg.primes, [2, 3, 5]);
    }

    #[test]
    fn file_overrides_merge_with_defaults() {
        let cfg = RunConfig::from_json(r#"{"region":"2,2,2","workers":3,"suite_regions":{"tau":"1,1,1"}}"#, "inline")
            .unwrap();
        assert_eq!(cfg.region, Region::cube(2));
        assert_eq!(cfg.workers, 3);
        assert_eq!(cfg.suite_regions.tau, Region::cube(1));
        assert_eq!(cfg.suite_regions.fix, Region::new(5, 3, 5));
        let cfg = RunConfig::from_json(r#"{"region":{"k_cap":1,"l_cap":2,"m_cap":3}}"#, "inline").unwrap();
        assert_eq!(cfg.region, Region::new(1, 2, 3));
    }

    #[test]
    fn rejects_bad_values() {
        for text in [
            r#"{"primes":[4]}"#,
            r#"{"alpha_max":0}"#,
            r#"{"workers":0}"#,
            r#"{"nonsense":1}"#,
            r#"{"region":"1,2"}"#,
            r#"{"primes":[]}"#,
        ] {
            assert!(RunConfig::from_json(text, "inline").is_err(), "{text}");
        }
    }
}
