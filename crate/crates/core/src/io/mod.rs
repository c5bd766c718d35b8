//! Instance files, the synthetic instance generator and front export.

mod front;
mod generator;

pub use front::{front_rows, read_front_csv, save_front, write_front_csv, write_plot, FrontRow};
pub use generator::{generate_instance, GeneratorParams, Preset};

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::model::{Instance, ModelError};

/// Fixture with one facility per echelon and hand-checkable costs.
pub const TINY_FIXTURE: &str = include_str!("../../fixtures/tiny_1x1x1x1.json");

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{column}: at `{field}`: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("{origin}: invalid instance:\n  - {}", .issues.join("\n  - "))]
    Validation { origin: String, issues: Vec<String> },
    #[error("front export: {0}")]
    Front(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Parses and validates an instance document. `origin` labels errors.
pub fn parse_instance(text: &str, origin: &str) -> Result<Instance, IoError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let inst: Instance = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        IoError::Parse {
            origin: origin.to_string(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: strip_position(&inner.to_string()),
        }
    })?;
    inst.validate().map_err(|e| match e {
        ModelError::Invalid(issues) => IoError::Validation {
            origin: origin.to_string(),
            issues,
        },
        other => IoError::Validation {
            origin: origin.to_string(),
            issues: vec![other.to_string()],
        },
    })?;
    Ok(inst)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text, &path.display().to_string())
}

pub fn instance_to_string(inst: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(inst).expect("instance serializes");
    text.push('\n');
    text
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, instance_to_string(inst)).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Bundled instances addressable by name.
pub fn builtin_instance(name: &str) -> Option<Instance> {
    match name {
        "tiny" | "tiny_1x1x1x1" => {
            Some(parse_instance(TINY_FIXTURE, "tiny_1x1x1x1").expect("bundled fixture is valid"))
        }
        _ => None,
    }
}
