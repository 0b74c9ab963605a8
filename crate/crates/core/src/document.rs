//! Versioned structured text documents.
//!
//! Every document the toolkit reads or writes is TOML with two header keys:
//!
//! ```toml
//! schema = "swarmnet.mission"
//! schema_version = 1
//! ```
//!
//! followed by the body's own keys. Missions, task plans, simulation
//! outcomes and reports all share this reader and writer.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("{}", parse_message(.line, .column, .field, .message))]
    Parse {
        line: Option<usize>,
        column: Option<usize>,
        field: Option<String>,
        message: String,
    },
    #[error("expected a `{expected}` document, found `{found}`")]
    WrongSchema { expected: String, found: String },
    #[error("document schema version {found} is not supported (this build reads version {supported})")]
    UnsupportedVersion { found: u32, supported: u32 },
    #[error("document body could not be serialised: {0}")]
    Serialize(String),
}

fn parse_message(
    line: &Option<usize>,
    column: &Option<usize>,
    field: &Option<String>,
    message: &str,
) -> String {
    let mut out = String::from("malformed document");
    if let (Some(l), Some(c)) = (line, column) {
        out.push_str(&format!(" at line {l}, column {c}"));
    }
    if let Some(f) = field {
        out.push_str(&format!(" (field `{f}`)"));
    }
    out.push_str(": ");
    out.push_str(message);
    out
}

#[derive(Deserialize)]
struct Header {
    schema: Option<String>,
    schema_version: Option<u32>,
}

fn parse_error(text: &str, err: toml::de::Error) -> DocumentError {
    let missing = err
        .message()
        .strip_prefix("missing field `")
        .and_then(|rest| rest.split('`').next())
        .map(str::to_owned);
    let (line, column, field) = match err.span() {
        Some(span) => {
            let before = &text[..span.start.min(text.len())];
            let line = before.matches('\n').count() + 1;
            let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            let line_text = text.lines().nth(line - 1).unwrap_or("");
            let field = line_text
                .split_once('=')
                .map(|(k, _)| k.trim().trim_matches('"').to_owned())
                .filter(|k| !k.is_empty() && !k.starts_with('['));
            (Some(line), Some(column), field)
        }
        None => (None, None, None),
    };
    DocumentError::Parse {
        line,
        column,
        field: missing.or(field),
        message: err.message().to_owned(),
    }
}

/// Serialise `body` under the given schema name.
pub fn write_document<T: Serialize>(schema: &str, body: &T) -> Result<String, DocumentError> {
    let body = toml::to_string(body).map_err(|e| DocumentError::Serialize(e.to_string()))?;
    Ok(format!(
        "schema = \"{schema}\"\nschema_version = {SCHEMA_VERSION}\n\n{body}"
    ))
}

/// Parse a document, checking the header against `schema`.
///
/// A missing header is accepted so hand-written files can omit it; a
/// present header must match.
pub fn read_document<T: DeserializeOwned>(schema: &str, text: &str) -> Result<T, DocumentError> {
    let header: Header = toml::from_str(text).map_err(|e| parse_error(text, e))?;
    if let Some(found) = header.schema {
        if found != schema {
            return Err(DocumentError::WrongSchema {
                expected: schema.to_owned(),
                found,
            });
        }
    }
    if let Some(v) = header.schema_version {
        if v != SCHEMA_VERSION {
            return Err(DocumentError::UnsupportedVersion {
                found: v,
                supported: SCHEMA_VERSION,
            });
        }
    }
    let body = strip_header(text);
    toml::from_str(&body).map_err(|e| parse_error(&body, e))
}

/// Blank the top-level header keys so bodies that reject unknown fields
/// still parse. Line numbers are preserved for error messages.
fn strip_header(text: &str) -> String {
    let mut in_root = true;
    let mut out = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        let t = line.trim_start();
        if t.starts_with('[') {
            in_root = false;
        }
        let key = t.split('=').next().unwrap_or("").trim();
        if in_root && t.contains('=') && (key == "schema" || key == "schema_version") {
            if line.ends_with('\n') {
                out.push('\n');
            }
        } else {
            out.push_str(line);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, PartialEq, Serialize, Deserialize)]
    struct Body {
        name: String,
        value: f64,
    }

    #[test]
    fn header_is_written_and_checked() {
        let doc = write_document(
            "swarmnet.test",
            &Body {
                name: "a".into(),
                value: 0.1,
            },
        )
        .unwrap();
        assert!(doc.starts_with("schema = \"swarmnet.test\"\nschema_version = 1\n"));
        let back: Body = read_document("swarmnet.test", &doc).unwrap();
        assert_eq!(back.value, 0.1);
        assert!(matches!(
            read_document::<Body>("swarmnet.other", &doc),
            Err(DocumentError::WrongSchema { .. })
        ));
        let v2 = doc.replace("schema_version = 1", "schema_version = 2");
        assert!(matches!(
            read_document::<Body>("swarmnet.test", &v2),
            Err(DocumentError::UnsupportedVersion { found: 2, .. })
        ));
    }

    #[test]
    fn parse_errors_carry_locus() {
        let text = "name = \"a\"\nvalue = \"not a number\"\n";
        match read_document::<Body>("x", text) {
            Err(DocumentError::Parse { line, field, .. }) => {
                assert_eq!(line, Some(2));
                assert_eq!(field.as_deref(), Some("value"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
