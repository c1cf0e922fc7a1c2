//! The instance file format: one JSON object with exactly the keys
//! `"arities"` and `"strings"`, coordinates 0-based.
//!
//! Emitted files are compact (no whitespace) with `arities` first and a
//! trailing newline, so equal sets always produce identical bytes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use wellconn::{Arities, StringSet};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid instance: {0}")]
    Validation(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    arities: Vec<u64>,
    strings: Vec<Vec<u64>>,
}

#[derive(Serialize)]
struct RawInstanceOut<'a> {
    arities: &'a [usize],
    strings: Vec<&'a [usize]>,
}

/// A validated instance: a string set over its arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub strings: StringSet,
}

impl InstanceFile {
    pub fn arities(&self) -> &Arities {
        self.strings.arities()
    }
}

fn render(values: &[u64]) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| InstanceError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    if raw.arities.is_empty() {
        return Err(InstanceError::Validation(
            "arities must list at least one axis".into(),
        ));
    }
    for (i, &d) in raw.arities.iter().enumerate() {
        if d < 2 {
            return Err(InstanceError::Validation(format!(
                "arities[{i}] = {d}: every axis needs at least 2 values"
            )));
        }
    }
    let dims: Vec<usize> = raw
        .arities
        .iter()
        .map(|&d| usize::try_from(d))
        .collect::<Result<_, _>>()
        .map_err(|_| InstanceError::Validation("arity too large".into()))?;
    let arities = Arities::new(dims).map_err(|e| InstanceError::Validation(e.to_string()))?;

    let mut seen: HashMap<&[u64], usize> = HashMap::new();
    let mut set = StringSet::new(arities.clone());
    for (j, tuple) in raw.strings.iter().enumerate() {
        if tuple.len() != arities.n() {
            return Err(InstanceError::Validation(format!(
                "strings[{j}] = {}: expected {} coordinates, found {}",
                render(tuple),
                arities.n(),
                tuple.len()
            )));
        }
        for (axis, (&c, &d)) in tuple.iter().zip(arities.dims()).enumerate() {
            if c >= d as u64 {
                return Err(InstanceError::Validation(format!(
                    "strings[{j}] = {}: coordinate {c} out of range for axis {axis} (size {d})",
                    render(tuple)
                )));
            }
        }
        if let Some(first) = seen.insert(tuple, j) {
            return Err(InstanceError::Validation(format!(
                "strings[{j}] = {} duplicates strings[{first}]",
                render(tuple)
            )));
        }
        let coords = tuple.iter().map(|&c| c as usize).collect();
        let s = arities
            .string(coords)
            .map_err(|e| InstanceError::Validation(e.to_string()))?;
        set.insert(s)
            .map_err(|e| InstanceError::Validation(e.to_string()))?;
    }
    Ok(InstanceFile { strings: set })
}

/// Canonical bytes of a string set, members in ascending order.
pub fn emit_instance(set: &StringSet) -> String {
    let mut text = emit_instance_inline(set);
    text.push('\n');
    text
}

/// [`emit_instance`] without the trailing newline, for embedding.
pub fn emit_instance_inline(set: &StringSet) -> String {
    let raw = RawInstanceOut {
        arities: set.arities().dims(),
        strings: set.iter().map(|s| s.coords()).collect(),
    };
    serde_json::to_string(&raw).expect("plain integer arrays always serialize")
}
