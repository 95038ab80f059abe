//! Flat `key: value` query files.
//!
//! ```text
//! type: 1
//! space.size: aleph0
//! C.size: 2
//! C.contains_b: true
//! D.size: aleph0
//! D.contains_b: true
//! D.cosize: aleph0
//! ```
//!
//! `C.b` is accepted for `C.contains_b`. A cosize may be left out when the
//! size is below `card(X)`, where it can only be `card(X)`.

use std::collections::BTreeMap;

use thiserror::Error;
use topdesign_core::cardinal::DEFAULT_MAX_ALEPH;
use topdesign_core::{Cardinal, DesignType, SpaceDescriptor, SubsetDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Query {
    pub ty: DesignType,
    pub space: SpaceDescriptor,
    pub c: SubsetDescriptor,
    pub d: SubsetDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line} ({field}): {message}")]
    Field { line: usize, field: String, message: String },
    #[error("missing field `{0}`")]
    Missing(String),
}

const KEYS: [&str; 10] = [
    "type",
    "space.size",
    "C.size",
    "C.contains_b",
    "C.cosize",
    "D.size",
    "D.contains_b",
    "D.cosize",
    "C.b",
    "D.b",
];

fn canonical_key(key: &str) -> &str {
    match key {
        "C.b" => "C.contains_b",
        "D.b" => "D.contains_b",
        k => k,
    }
}

pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(QueryError::Syntax { line, message: format!("expected `key: value`, got `{content}`") });
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(QueryError::Syntax { line, message: format!("unknown key `{key}`") });
        }
        if fields.insert(canonical_key(key), (line, value.trim())).is_some() {
            return Err(QueryError::Field {
                line,
                field: canonical_key(key).to_string(),
                message: "given twice".into(),
            });
        }
    }

    let get = |key: &str| fields.get(key).copied().ok_or_else(|| QueryError::Missing(key.to_string()));
    let field_err = |key: &str, line: usize, message: String| QueryError::Field { line, field: key.to_string(), message };
    let cardinal = |key: &str, line: usize, value: &str| {
        Cardinal::parse_bounded(value, DEFAULT_MAX_ALEPH).map_err(|e| field_err(key, line, e.to_string()))
    };

    let (line, value) = get("type")?;
    let ty = value
        .parse::<u8>()
        .ok()
        .and_then(DesignType::from_number)
        .ok_or_else(|| field_err("type", line, format!("expected 1, 2, 3 or 4, got `{value}`")))?;

    let (line, value) = get("space.size")?;
    let size = cardinal("space.size", line, value)?;
    let space = SpaceDescriptor::new(size).map_err(|e| field_err("space.size", line, e.to_string()))?;

    let subset = |name: &str| -> Result<SubsetDescriptor, QueryError> {
        let size_key = format!("{name}.size");
        let b_key = format!("{name}.contains_b");
        let cosize_key = format!("{name}.cosize");
        let (line, value) = get(&size_key)?;
        let size = cardinal(&size_key, line, value)?;
        let (line, value) = get(&b_key)?;
        let contains_b = value
            .parse::<bool>()
            .map_err(|_| field_err(&b_key, line, format!("expected true or false, got `{value}`")))?;
        let cosize = match fields.get(cosize_key.as_str()) {
            Some(&(line, value)) => cardinal(&cosize_key, line, value)?,
            None if size < space.size() => space.size(),
            None => {
                let line = fields[size_key.as_str()].0;
                return Err(field_err(
                    &cosize_key,
                    line,
                    "required when the size is not below card(X)".into(),
                ));
            }
        };
        Ok(SubsetDescriptor::new(size, contains_b, cosize))
    };

    Ok(Query { ty, space, c: subset("C")?, d: subset("D")? })
}
