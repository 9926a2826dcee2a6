use std::fmt;
use std::io::{self, Read};
use std::path::Path;

use natded::proofdoc::{document_from_json, parse_proof, DocumentJson, ProofDocument, ProofParseError};
use natded::semantics::DEFAULT_MAX_STRUCTURES;

pub const MAX_STRUCTURES_VAR: &str = "ND_MAX_STRUCTURES";

#[derive(Debug)]
pub enum InputError {
    Io(String, io::Error),
    Json(serde_json::Error),
    Parse(ProofParseError),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(path, e) => write!(f, "{path}: {e}"),
            InputError::Json(e) => write!(f, "invalid JSON document: {e}"),
            InputError::Parse(e) => write!(f, "{e}"),
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &Path) -> Result<String, InputError> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| InputError::Io(path.display().to_string(), e))?;
    Ok(text)
}

/// Reads a document in either the text or the JSON form. JSON is
/// recognised by a leading `{`.
pub fn parse_document(text: &str) -> Result<ProofDocument, InputError> {
    if text.trim_start().starts_with('{') {
        let json: DocumentJson = serde_json::from_str(text).map_err(InputError::Json)?;
        document_from_json(&json).map_err(InputError::Parse)
    } else {
        parse_proof(text).map_err(InputError::Parse)
    }
}

/// The structure cap, from the environment if set.
pub fn max_structures() -> Result<u128, String> {
    match std::env::var(MAX_STRUCTURES_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_STRUCTURES_VAR} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_STRUCTURES),
    }
}
