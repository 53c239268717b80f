//! Run configuration: an INI-style config file with `[run]` and `[params]`
//! sections, merged with command-line overrides, plus a stable hash over
//! the normalized configuration.
//!
//! The hash covers the experiment name, the seed, and every experiment
//! parameter. It deliberately excludes the output directory and the thread
//! count: neither may influence results, so neither may influence the hash
//! stamped into result rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown experiment '{0}' (expected one of: bound-scan, regular, degeneracy, compare-schedules, collapse, field-scan, validate)")]
    UnknownExperiment(String),
    #[error("no experiment selected (use --experiment or [run] experiment = ...)")]
    MissingExperiment,
    #[error("invalid value for parameter '{key}': {message}")]
    BadParam { key: String, message: String },
}

/// The named experiments this binary can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    BoundScan,
    Regular,
    Degeneracy,
    CompareSchedules,
    Collapse,
    FieldScan,
    Validate,
}

impl Experiment {
    pub fn parse(name: &str) -> Result<Self, ConfigError> {
        match name {
            "bound-scan" => Ok(Self::BoundScan),
            "regular" => Ok(Self::Regular),
            "degeneracy" => Ok(Self::Degeneracy),
            "compare-schedules" => Ok(Self::CompareSchedules),
            "collapse" => Ok(Self::Collapse),
            "field-scan" => Ok(Self::FieldScan),
            "validate" => Ok(Self::Validate),
            other => Err(ConfigError::UnknownExperiment(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BoundScan => "bound-scan",
            Self::Regular => "regular",
            Self::Degeneracy => "degeneracy",
            Self::CompareSchedules => "compare-schedules",
            Self::Collapse => "collapse",
            Self::FieldScan => "field-scan",
            Self::Validate => "validate",
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub out_dir: PathBuf,
    /// Wall-time knob only; never part of the hash, never affects results.
    pub threads: usize,
    params: BTreeMap<String, String>,
}

/// Environment variable consulted for the default output directory.
pub const OUT_DIR_ENV: &str = "DQA_OUT";

#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub experiment: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Assemble a configuration from an optional file plus overrides.
    /// Precedence: command line > config file > environment > defaults.
    pub fn load(config_path: Option<&Path>, overrides: &Overrides) -> Result<Self, ConfigError> {
        let mut run_section: BTreeMap<String, String> = BTreeMap::new();
        let mut params: BTreeMap<String, String> = BTreeMap::new();
        if let Some(path) = config_path {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            parse_ini(&text, &mut run_section, &mut params)?;
        }

        let experiment_name = overrides
            .experiment
            .clone()
            .or_else(|| run_section.get("experiment").cloned())
            .ok_or(ConfigError::MissingExperiment)?;
        let experiment = Experiment::parse(&experiment_name)?;

        let seed = match overrides.seed {
            Some(s) => s,
            None => match run_section.get("seed") {
                Some(raw) => raw.parse().map_err(|_| ConfigError::BadParam {
                    key: "seed".to_string(),
                    message: format!("expected unsigned integer, got '{raw}'"),
                })?,
                None => 0,
            },
        };

        let out_dir = overrides
            .out
            .clone()
            .or_else(|| run_section.get("out").map(PathBuf::from))
            .or_else(|| std::env::var(OUT_DIR_ENV).ok().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));

        let threads = match overrides.threads {
            Some(t) => t,
            None => run_section
                .get("threads")
                .map(|raw| {
                    raw.parse().map_err(|_| ConfigError::BadParam {
                        key: "threads".to_string(),
                        message: format!("expected unsigned integer, got '{raw}'"),
                    })
                })
                .transpose()?
                .unwrap_or(1),
        };

        Ok(Self {
            experiment,
            seed,
            out_dir,
            threads,
            params,
        })
    }

    /// A config built in code (used by tests and the acceptance suite).
    pub fn synthetic(experiment: Experiment, seed: u64, out_dir: PathBuf) -> Self {
        Self {
            experiment,
            seed,
            out_dir,
            threads: 1,
            params: BTreeMap::new(),
        }
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// FNV-1a over the normalized configuration, as fixed-width hex.
    pub fn hash(&self) -> String {
        let mut normalized = String::new();
        let _ = writeln!(normalized, "experiment={}", self.experiment.name());
        let _ = writeln!(normalized, "seed={}", self.seed);
        for (k, v) in &self.params {
            let _ = writeln!(normalized, "params.{k}={v}");
        }
        let mut hash: u64 = 0xcbf29ce484222325;
        for byte in normalized.as_bytes() {
            hash ^= *byte as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        format!("{hash:016x}")
    }

    pub fn get_str(&self, key: &str, default: &str) -> String {
        self.params
            .get(key)
            .cloned()
            .unwrap_or_else(|| default.to_string())
    }

    pub fn get_usize(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(raw) => raw.trim().parse().map_err(|_| ConfigError::BadParam {
                key: key.to_string(),
                message: format!("expected unsigned integer, got '{raw}'"),
            }),
        }
    }

    pub fn get_f64(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.params.get(key) {
            None => Ok(default),
            Some(raw) => raw.trim().parse().map_err(|_| ConfigError::BadParam {
                key: key.to_string(),
                message: format!("expected number, got '{raw}'"),
            }),
        }
    }

    pub fn get_usize_list(&self, key: &str, default: &[usize]) -> Result<Vec<usize>, ConfigError> {
        match self.params.get(key) {
            None => Ok(default.to_vec()),
            Some(raw) => raw
                .split(',')
                .map(|tok| {
                    tok.trim().parse().map_err(|_| ConfigError::BadParam {
                        key: key.to_string(),
                        message: format!("expected comma-separated integers, got '{raw}'"),
                    })
                })
                .collect(),
        }
    }

    pub fn get_f64_list(&self, key: &str, default: &[f64]) -> Result<Vec<f64>, ConfigError> {
        match self.params.get(key) {
            None => Ok(default.to_vec()),
            Some(raw) => raw
                .split(',')
                .map(|tok| {
                    tok.trim().parse().map_err(|_| ConfigError::BadParam {
                        key: key.to_string(),
                        message: format!("expected comma-separated numbers, got '{raw}'"),
                    })
                })
                .collect(),
        }
    }
}

fn parse_ini(
    text: &str,
    run_section: &mut BTreeMap<String, String>,
    params: &mut BTreeMap<String, String>,
) -> Result<(), ConfigError> {
    let mut section = String::from("run");
    for (idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(ConfigError::Parse {
                    line: idx + 1,
                    message: format!("unterminated section header '{line}'"),
                });
            }
            section = line[1..line.len() - 1].trim().to_string();
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(ConfigError::Parse {
                line: idx + 1,
                message: format!("expected 'key = value', got '{line}'"),
            });
        };
        let key = line[..eq].trim().to_string();
        let value = line[eq + 1..].trim().to_string();
        if key.is_empty() {
            return Err(ConfigError::Parse {
                line: idx + 1,
                message: "empty key".to_string(),
            });
        }
        match section.as_str() {
            "run" => {
                run_section.insert(key, value);
            }
            "params" => {
                params.insert(key, value);
            }
            other => {
                return Err(ConfigError::Parse {
                    line: idx + 1,
                    message: format!("unknown section '[{other}]' (expected [run] or [params])"),
                });
            }
        }
    }
    Ok(())
}
