//! Experiment configuration: one `key=value` per line, `#` starts a comment,
//! list values are comma-separated.
//!
//! ```text
//! kind = utility
//! m = 512, 1024
//! k = 4
//! dataset_size = 100
//! epsilon = 0.5, 1, 2
//! delta = 0.05
//! alpha = 0.9
//! trials = 20
//! query_count = 5000
//! seed = 1
//! out = utility.csv
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Fpr,
    Utility,
    Wdist,
    Audit,
    Calibrate,
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fpr" => Ok(ExperimentKind::Fpr),
            "utility" => Ok(ExperimentKind::Utility),
            "wdist" => Ok(ExperimentKind::Wdist),
            "audit" => Ok(ExperimentKind::Audit),
            "calibrate" => Ok(ExperimentKind::Calibrate),
            _ => Err(format!(
                "unknown kind `{s}` (expected fpr, utility, wdist, audit or calibrate)"
            )),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Fpr => "fpr",
            ExperimentKind::Utility => "utility",
            ExperimentKind::Wdist => "wdist",
            ExperimentKind::Audit => "audit",
            ExperimentKind::Calibrate => "calibrate",
        })
    }
}

/// A parsed experiment: the kind, the parameter grid and run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub m: Vec<u64>,
    pub k: Vec<usize>,
    pub dataset_size: Vec<u64>,
    pub epsilon: Vec<f64>,
    pub delta: Vec<f64>,
    pub alpha: Vec<f64>,
    pub trials: u64,
    pub query_count: u64,
    pub seed: u64,
    /// Universe size for sampled datasets and queries.
    pub universe: u64,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            m: vec![32],
            k: vec![3],
            dataset_size: vec![5],
            epsilon: vec![1.0],
            delta: vec![0.05],
            alpha: vec![0.5],
            trials: 10_000,
            query_count: 1_000,
            seed: 0,
            universe: 1 << 40,
            out: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected key=value, got `{line}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "kind" {
                kind = Some(value.parse().map_err(|message| Error::Parse {
                    line: line_no,
                    message,
                })?);
            } else {
                entries.push((line_no, key.to_string(), value.to_string()));
            }
        }
        let kind = kind.ok_or_else(|| Error::Format("config is missing `kind`".into()))?;
        let mut cfg = ExperimentConfig::new(kind);
        for (line, key, value) in entries {
            cfg.set(&key, &value)
                .map_err(|message| Error::Parse { line, message })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "m" => self.m = list(key, value)?,
            "k" => self.k = list(key, value)?,
            "dataset_size" => self.dataset_size = list(key, value)?,
            "epsilon" => self.epsilon = list(key, value)?,
            "delta" => self.delta = list(key, value)?,
            "alpha" => self.alpha = list(key, value)?,
            "trials" => self.trials = scalar(key, value)?,
            "query_count" => self.query_count = scalar(key, value)?,
            "seed" => self.seed = scalar(key, value)?,
            "universe" => self.universe = scalar(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.query_count == 0 {
            return Err(Error::domain("trials and query_count must be positive"));
        }
        if self.universe < 2 {
            return Err(Error::domain("universe must be at least 2"));
        }
        let lists = [
            ("m", self.m.is_empty()),
            ("k", self.k.is_empty()),
            ("dataset_size", self.dataset_size.is_empty()),
            ("epsilon", self.epsilon.is_empty()),
            ("delta", self.delta.is_empty()),
            ("alpha", self.alpha.is_empty()),
        ];
        if let Some((key, _)) = lists.iter().find(|(_, empty)| *empty) {
            return Err(Error::domain(format!("`{key}` needs at least one value")));
        }
        Ok(())
    }
}

fn scalar<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("bad value `{value}` for `{key}`"))
}

fn list<T: FromStr>(key: &str, value: &str) -> std::result::Result<Vec<T>, String> {
    value
        .split(',')
        .map(|v| v.trim())
        .filter(|v| !v.is_empty())
        .map(|v| scalar(key, v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists_and_comments() {
        let cfg = ExperimentConfig::parse(
            "# grid\nkind = utility\nm = 512, 1024\nepsilon=0.5,1 # inline\ntrials=3\nout = a.csv\n",
        )
        .unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Utility);
        assert_eq!(cfg.m, vec![512, 1024]);
        assert_eq!(cfg.epsilon, vec![0.5, 1.0]);
        assert_eq!(cfg.trials, 3);
        assert_eq!(cfg.k, vec![3]);
        assert_eq!(cfg.out, Some(PathBuf::from("a.csv")));
    }

    #[test]
    fn unknown_key_is_named() {
        let err = ExperimentConfig::parse("kind=fpr\nbogus_key=1\n").unwrap_err();
        assert!(err.to_string().contains("bogus_key"), "{err}");
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn bad_values() {
        assert!(ExperimentConfig::parse("kind=fpr\nm=abc\n").is_err());
        assert!(ExperimentConfig::parse("kind=nope\n").is_err());
        assert!(ExperimentConfig::parse("m=3\n").is_err());
        assert!(ExperimentConfig::parse("kind=fpr\nm\n").is_err());
        assert!(ExperimentConfig::parse("kind=fpr\nm=,\n").is_err());
        assert!(ExperimentConfig::parse("kind=fpr\ntrials=0\n").is_err());
    }
}
