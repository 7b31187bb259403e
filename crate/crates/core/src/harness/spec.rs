use crate::coxeter::{parse_group, CoxeterGroup};
use crate::enumerate::DEFAULT_CAP;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Montecarlo,
    #[default]
    Auto,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Montecarlo => "montecarlo",
            Mode::Auto => "auto",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "montecarlo" => Ok(Mode::Montecarlo),
            "auto" => Ok(Mode::Auto),
            _ => Err(Error::ParameterOutOfRange(format!("unknown mode {s:?}"))),
        }
    }
}

/// On-disk form of a spec. Only `groups` is required.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub name: String,
    pub groups: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_cap")]
    pub cap: u64,
}

fn default_samples() -> u64 {
    DEFAULT_SAMPLES
}

fn default_cap() -> u64 {
    DEFAULT_CAP
}

/// A validated sequence `W_1, …, W_N` with run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    pub name: String,
    pub groups: Vec<CoxeterGroup>,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub cap: u64,
}

impl SequenceSpec {
    pub fn new(name: impl Into<String>, groups: Vec<CoxeterGroup>, mode: Mode) -> Self {
        SequenceSpec {
            name: name.into(),
            groups,
            mode,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            cap: DEFAULT_CAP,
        }
    }

    /// Checks the settings; the groups are already parsed.
    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::ConstraintViolated("spec lists no groups".into()));
        }
        if self.mode != Mode::Exact && self.samples == 0 {
            return Err(Error::ConstraintViolated(format!("samples must be positive in {} mode", self.mode)));
        }
        if self.samples > u32::MAX as u64 * crate::sampling::CHUNK_SIZE as u64 {
            return Err(Error::ParameterOutOfRange(format!("samples = {} is too large", self.samples)));
        }
        Ok(())
    }

    pub fn from_file(file: &SpecFile) -> Result<Self> {
        let mut groups = Vec::with_capacity(file.groups.len());
        let mut problems = Vec::new();
        let mut all_parse = true;
        for (i, text) in file.groups.iter().enumerate() {
            match parse_group(text) {
                Ok(g) => groups.push(g),
                Err(e) => {
                    all_parse &= matches!(e, Error::Parse { .. });
                    problems.push(format!("groups[{i}] {text:?}: {e}"));
                }
            }
        }
        if !problems.is_empty() {
            let message = problems.join("; ");
            return Err(if all_parse {
                Error::parse(0, message)
            } else {
                Error::ParameterOutOfRange(message)
            });
        }
        let spec = SequenceSpec {
            name: file.name.clone(),
            groups,
            mode: file.mode,
            samples: file.samples,
            seed: file.seed,
            cap: file.cap,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_file(&self) -> SpecFile {
        SpecFile {
            name: self.name.clone(),
            groups: self.groups.iter().map(|g| g.to_string()).collect(),
            mode: self.mode,
            samples: self.samples,
            seed: self.seed,
            cap: self.cap,
        }
    }
}

/// Parses and validates a JSON spec. Every bad group string is reported,
/// with its index and the character position inside it.
pub fn parse_spec(text: &str) -> Result<SequenceSpec> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| {
        Error::parse(e.column(), format!("line {}: {e}", e.line()))
    })?;
    SequenceSpec::from_file(&file)
}
