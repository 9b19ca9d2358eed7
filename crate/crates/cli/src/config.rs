//! Flat `key = value` run configuration with line-addressed errors.
//!
//! Every experiment kind reads a handful of scalar keys; keeping the format
//! flat means each mistake maps to exactly one line of the input file.

use gapchannel_core::master_analytics::ChainAncillaModel;
use gapchannel_core::{HarmonicModelParams64, SpinModelParams64};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A configuration problem, with the 1-based line it came from when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn plain(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// The experiment selected by the `kind` key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    SpinEvolve,
    HarmonicEvolve,
    MasterSolve,
    FrequencyScan,
    GapScan,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::SpinEvolve,
        ExperimentKind::HarmonicEvolve,
        ExperimentKind::MasterSolve,
        ExperimentKind::FrequencyScan,
        ExperimentKind::GapScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SpinEvolve => "spin-evolve",
            ExperimentKind::HarmonicEvolve => "harmonic-evolve",
            ExperimentKind::MasterSolve => "master-solve",
            ExperimentKind::FrequencyScan => "frequency-scan",
            ExperimentKind::GapScan => "gap-scan",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = ExperimentKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown kind `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// TEBD run of the spin chain with two spin ancillas.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinEvolveConfig {
    pub params: SpinModelParams64,
    pub dt: f64,
    pub t_max: f64,
    pub sample_every: usize,
    pub chi: usize,
}

/// Exact Gaussian run of the harmonic chain with two oscillator ancillas.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicEvolveConfig {
    pub params: HarmonicModelParams64,
    pub ns0: f64,
    pub t_max: f64,
    pub samples: usize,
}

/// Closed-form occupation solution of the master equation.
#[derive(Debug, Clone, PartialEq)]
pub struct MasterSolveConfig {
    pub model: ChainAncillaModel<f64>,
    pub ja: f64,
    pub ns0: f64,
    pub nr0: f64,
    pub t_max: f64,
    pub samples: usize,
}

/// Oscillation-frequency sweep over the pinning frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyScanConfig {
    pub coupling: f64,
    pub ancilla_freq: f64,
    pub ja: f64,
    pub separation: usize,
    pub pinning_min: f64,
    pub pinning_max: f64,
    pub pinning_steps: usize,
}

/// Finite-size spin-gap scan with extrapolation and regime classification.
#[derive(Debug, Clone, PartialEq)]
pub struct GapScanConfig {
    pub params: SpinModelParams64,
    pub sizes: Vec<usize>,
}

/// A fully validated run request.
#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    SpinEvolve(SpinEvolveConfig),
    HarmonicEvolve(HarmonicEvolveConfig),
    MasterSolve(MasterSolveConfig),
    FrequencyScan(FrequencyScanConfig),
    GapScan(GapScanConfig),
}

impl RunConfig {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            RunConfig::SpinEvolve(_) => ExperimentKind::SpinEvolve,
            RunConfig::HarmonicEvolve(_) => ExperimentKind::HarmonicEvolve,
            RunConfig::MasterSolve(_) => ExperimentKind::MasterSolve,
            RunConfig::FrequencyScan(_) => ExperimentKind::FrequencyScan,
            RunConfig::GapScan(_) => ExperimentKind::GapScan,
        }
    }
}

/// Raw `key = value` entries with their source lines.
struct RawConfig {
    entries: BTreeMap<String, (usize, String)>,
    used: std::cell::RefCell<Vec<String>>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::at(
                    line_no,
                    format!("expected `key = value`, got `{line}`"),
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(ConfigError::at(line_no, "empty key or value"));
            }
            if let Some((first_line, _)) = entries.get(&key) {
                return Err(ConfigError::at(
                    line_no,
                    format!("duplicate key `{key}` (first set on line {first_line})"),
                ));
            }
            entries.insert(key, (line_no, value));
        }
        Ok(RawConfig {
            entries,
            used: std::cell::RefCell::new(Vec::new()),
        })
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T, ConfigError> {
        match self.entries.get(key) {
            None => Err(ConfigError::plain(format!("missing key: {key}"))),
            Some((line, value)) => {
                self.used.borrow_mut().push(key.to_string());
                value.parse().map_err(|_| {
                    ConfigError::at(
                        *line,
                        format!(
                            "cannot parse `{value}` as {} for key `{key}`",
                            std::any::type_name::<T>()
                        ),
                    )
                })
            }
        }
    }

    fn optional<T: FromStr>(&self, key: &str, default: T) -> Result<T, ConfigError> {
        if self.entries.contains_key(key) {
            self.require(key)
        } else {
            Ok(default)
        }
    }

    /// Reject entries no experiment key consumed, pointing at their lines.
    fn finish(self) -> Result<(), ConfigError> {
        let used = self.used.into_inner();
        for (key, (line, _)) in &self.entries {
            if !used.contains(key) {
                return Err(ConfigError::at(*line, format!("unknown key `{key}`")));
            }
        }
        Ok(())
    }
}

fn positive(value: f64, key: &str) -> Result<f64, ConfigError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(ConfigError::plain(format!("{key} must be > 0, got {value}")))
    }
}

fn positive_count(value: usize, key: &str) -> Result<usize, ConfigError> {
    if value > 0 {
        Ok(value)
    } else {
        Err(ConfigError::plain(format!("{key} must be > 0")))
    }
}

/// Parse and validate a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let raw = RawConfig::parse(text)?;
    let kind: String = raw.require("kind")?;
    let kind: ExperimentKind = kind.parse().map_err(ConfigError::plain)?;
    let config = match kind {
        ExperimentKind::SpinEvolve => {
            let params = SpinModelParams64 {
                n: raw.require("n")?,
                field: raw.require("b")?,
                jx: raw.require("jx")?,
                jy: raw.optional("jy", 0.0)?,
                jz: raw.optional("jz", 0.0)?,
                ancilla_field: raw.require("ba")?,
                ancilla_coupling: raw.require("ja")?,
                site_s: raw.require("m_s")?,
                site_r: raw.require("m_r")?,
            };
            params
                .validate()
                .map_err(|e| ConfigError::plain(e.to_string()))?;
            RunConfig::SpinEvolve(SpinEvolveConfig {
                params,
                dt: positive(raw.optional("dt", 0.05)?, "dt")?,
                t_max: positive(raw.require("t_max")?, "t_max")?,
                sample_every: positive_count(raw.optional("sample_every", 20)?, "sample_every")?,
                chi: positive_count(raw.optional("chi", 10)?, "chi")?,
            })
        }
        ExperimentKind::HarmonicEvolve => {
            let params = HarmonicModelParams64 {
                n: raw.require("n")?,
                coupling: raw.require("coupling")?,
                pinning: raw.require("pinning")?,
                ancilla_freq: raw.require("ancilla_freq")?,
                ancilla_coupling: raw.require("ja")?,
                site_s: raw.require("m_s")?,
                site_r: raw.require("m_r")?,
            };
            params
                .validate()
                .map_err(|e| ConfigError::plain(e.to_string()))?;
            let ns0 = raw.optional("ns0", 1.0)?;
            if ns0 < 0.0 {
                return Err(ConfigError::plain("ns0 must be >= 0"));
            }
            RunConfig::HarmonicEvolve(HarmonicEvolveConfig {
                params,
                ns0,
                t_max: positive(raw.require("t_max")?, "t_max")?,
                samples: positive_count(raw.optional("samples", 400)?, "samples")?,
            })
        }
        ExperimentKind::MasterSolve => {
            let model = ChainAncillaModel {
                coupling: raw.require("coupling")?,
                pinning: raw.require("pinning")?,
                ancilla_freq: raw.require("ancilla_freq")?,
                separation: raw.require("separation")?,
            };
            model
                .validate()
                .map_err(|e| ConfigError::plain(e.to_string()))?;
            let ja = raw.require("ja")?;
            if ja < 0.0 {
                return Err(ConfigError::plain("ja must be >= 0"));
            }
            RunConfig::MasterSolve(MasterSolveConfig {
                model,
                ja,
                ns0: raw.optional("ns0", 1.0)?,
                nr0: raw.optional("nr0", 0.0)?,
                t_max: positive(raw.require("t_max")?, "t_max")?,
                samples: positive_count(raw.optional("samples", 400)?, "samples")?,
            })
        }
        ExperimentKind::FrequencyScan => {
            let config = FrequencyScanConfig {
                coupling: positive(raw.require("coupling")?, "coupling")?,
                ancilla_freq: positive(raw.require("ancilla_freq")?, "ancilla_freq")?,
                ja: raw.require("ja")?,
                separation: positive_count(raw.require("separation")?, "separation")?,
                pinning_min: raw.require("pinning_min")?,
                pinning_max: raw.require("pinning_max")?,
                pinning_steps: positive_count(raw.optional("pinning_steps", 31)?, "pinning_steps")?,
            };
            if config.ja < 0.0 {
                return Err(ConfigError::plain("ja must be >= 0"));
            }
            if config.pinning_min <= config.ancilla_freq {
                return Err(ConfigError::plain(format!(
                    "pinning_min ({}) must exceed ancilla_freq ({}): the sweep only \
                     covers the coherent-transfer window",
                    config.pinning_min, config.ancilla_freq
                )));
            }
            if config.pinning_max <= config.pinning_min {
                return Err(ConfigError::plain("pinning_max must exceed pinning_min"));
            }
            if config.pinning_steps < 2 {
                return Err(ConfigError::plain("pinning_steps must be at least 2"));
            }
            RunConfig::FrequencyScan(config)
        }
        ExperimentKind::GapScan => {
            // The gap only depends on the chain couplings; placeholder sites
            // keep the shared parameter struct valid.
            let params = SpinModelParams64 {
                n: 10,
                field: raw.require("b")?,
                jx: raw.require("jx")?,
                jy: raw.optional("jy", 0.0)?,
                jz: raw.optional("jz", 0.0)?,
                ancilla_field: raw.require("ba")?,
                ancilla_coupling: raw.require("ja")?,
                site_s: 4,
                site_r: 6,
            };
            params
                .validate()
                .map_err(|e| ConfigError::plain(e.to_string()))?;
            let sizes_text: String = raw.optional("sizes", "10,12,14".to_string())?;
            let mut sizes = Vec::new();
            for part in sizes_text.split(',') {
                let n: usize = part.trim().parse().map_err(|_| {
                    ConfigError::plain(format!("cannot parse `{part}` in `sizes` as a count"))
                })?;
                sizes.push(n);
            }
            RunConfig::GapScan(GapScanConfig { params, sizes })
        }
    };
    raw.finish()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_spin_run_with_defaults() {
        let text = "\
# transfer run
kind = spin-evolve
n = 100
b = 1
jx = 0.3
ba = 0.64
ja = 0.05
m_s = 45
m_r = 55
t_max = 100
";
        let RunConfig::SpinEvolve(c) = parse_config(text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(c.params.n, 100);
        assert_eq!(c.params.jy, 0.0);
        assert_eq!(c.dt, 0.05);
        assert_eq!(c.chi, 10);
    }

    #[test]
    fn empty_file_reports_the_missing_kind() {
        let err = parse_config("").unwrap_err();
        assert_eq!(err.message, "missing key: kind");
    }

    #[test]
    fn negative_coupling_is_rejected() {
        let text = "kind = spin-evolve\nn = 10\nb = 1\njx = 0.3\nba = 0.5\n\
                    ja = -0.05\nm_s = 4\nm_r = 6\nt_max = 10\n";
        let err = parse_config(text).unwrap_err();
        assert!(err.message.contains("Ja"), "{}", err.message);
    }

    #[test]
    fn unknown_keys_carry_their_line_number() {
        let text = "kind = master-solve\ncoupling = 1\npinning = 0.8\n\
                    ancilla_freq = 0.5\nseparation = 3\nja = 0.05\nt_max = 100\n\
                    bogus = 7\n";
        let err = parse_config(text).unwrap_err();
        assert_eq!(err.line, Some(8));
        assert!(err.message.contains("bogus"));
    }

    #[test]
    fn malformed_lines_and_duplicates_are_reported() {
        let err = parse_config("kind spin-evolve\n").unwrap_err();
        assert_eq!(err.line, Some(1));
        let err = parse_config("kind = gap-scan\nb = 1\nb = 2\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        assert!(err.message.contains("duplicate"));
    }

    #[test]
    fn frequency_scan_must_stay_in_the_coherent_window() {
        let text = "kind = frequency-scan\ncoupling = 1\nancilla_freq = 0.5\n\
                    ja = 0.05\nseparation = 3\npinning_min = 0.4\npinning_max = 0.9\n";
        let err = parse_config(text).unwrap_err();
        assert!(err.message.contains("pinning_min"));
    }
}
