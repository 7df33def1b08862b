//! The JSON report every command prints, and the mapping to exit codes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use omega_core::Error;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    InFile { path: PathBuf, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Core(e) | CliError::InFile { source: e, .. } => e,
            CliError::Io { .. } => return 2,
        };
        if core.is_budget() {
            3
        } else if matches!(core, Error::Invariant(_)) {
            1
        } else {
            2
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Attaches the file name to errors raised while reading its contents.
pub fn in_file<T>(path: &Path, r: omega_core::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::InFile {
        path: path.to_owned(),
        source,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A query was answered.
    Success,
    /// A property was checked and holds.
    Verified,
    /// A property was checked and fails.
    Refuted,
    Error,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outcome: Status,
    pub result: Value,
    pub counters: BTreeMap<String, u64>,
    pub witnesses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_us: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Map::new(),
            outcome: Status::Success,
            result: Value::Null,
            counters: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            error: None,
            wall_clock_us: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.into(), to_value(value));
        self
    }

    pub fn result(mut self, value: impl Serialize) -> Self {
        self.result = to_value(value);
        self
    }

    pub fn counter(mut self, key: &str, value: u64) -> Self {
        self.counters.insert(key.into(), value);
        self
    }

    pub fn witness(mut self, key: &str, value: impl Serialize) -> Self {
        self.witnesses.insert(key.into(), to_value(value));
        self
    }

    /// Marks the report verified or refuted.
    pub fn verdict(mut self, holds: bool) -> Self {
        self.outcome = if holds { Status::Verified } else { Status::Refuted };
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.outcome {
            Status::Success | Status::Verified => 0,
            Status::Refuted => 1,
            Status::Error => 2,
        }
    }
}

pub fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("reports serialize to JSON")
}
