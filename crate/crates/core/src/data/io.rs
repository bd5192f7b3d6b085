//! JSON documents for monopole data.

use serde_json::error::Category;
use sha2::{Digest, Sha256};

use super::validate::structural_violations;
use super::{DataError, MonopoleData};
use crate::canonical_json;

/// Parses a dataset document. Syntax errors carry a line and column; unknown
/// fields, wrong types and structural rule violations are schema errors.
/// The identities are not checked here (see [`super::validate`]).
pub fn parse(text: &[u8]) -> Result<MonopoleData, DataError> {
    let data: MonopoleData = serde_json::from_slice(text).map_err(|e| match e.classify() {
        Category::Data => DataError::Schema {
            field: offending_field(&e.to_string()),
            message: e.to_string(),
        },
        _ => DataError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        },
    })?;
    if let Some(v) = structural_violations(&data).into_iter().next() {
        let field = if v.rule.as_str().ends_with("-id") {
            "points".to_string()
        } else {
            v.detail.split('-').next().unwrap_or("n").to_string()
        };
        return Err(DataError::Schema {
            field,
            message: v.to_string(),
        });
    }
    Ok(data.canonical())
}

/// The first backquoted name in a serde message, which is the field at fault.
fn offending_field(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "document".to_string())
}

/// Canonical document bytes: points sorted by id, coefficients by endpoints,
/// single spaces after separators and a trailing newline.
pub fn serialize(data: &MonopoleData) -> Vec<u8> {
    canonical_json::to_vec(&data.clone().canonical())
}

pub fn serialize_string(data: &MonopoleData) -> String {
    String::from_utf8(serialize(data)).expect("canonical JSON is UTF-8")
}

/// Hex SHA-256 of the canonical serialization.
pub fn content_hash(data: &MonopoleData) -> String {
    hex::encode(Sha256::digest(serialize(data)))
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    const I1_DOC: &str = "{\"name\": \"I1\", \"points\": [{\"id\": \"a\", \"gr\": 1}, {\"id\": \"d\", \"gr\": -2}], \"n\": [{\"from\": \"a\", \"to\": \"theta\", \"value\": 1}], \"m\": []}\n";

    #[test]
    fn canonical_i1_round_trip() {
        let d = parse(I1_DOC.as_bytes()).unwrap();
        assert_eq!(d, i1());
        assert_eq!(serialize_string(&d), I1_DOC);
    }

    #[test]
    fn duplicate_point_is_schema_error() {
        let doc = r#"{"name": "x", "points": [{"id": "a", "gr": 1}, {"id": "a", "gr": 0}], "n": [], "m": []}"#;
        assert!(matches!(parse(doc.as_bytes()), Err(DataError::Schema { field, .. }) if field == "points"));
    }

    #[test]
    fn gap_two_n_coefficient_is_schema_error() {
        let doc = r#"{"name": "x", "points": [{"id": "a", "gr": 2}, {"id": "b", "gr": 0}], "n": [{"from": "a", "to": "b", "value": 1}], "m": []}"#;
        assert!(matches!(parse(doc.as_bytes()), Err(DataError::Schema { field, .. }) if field == "n"));
    }

    #[test]
    fn unknown_field_is_named() {
        let doc = r#"{"name": "x", "points": [], "n": [], "m": [], "extra": 1}"#;
        match parse(doc.as_bytes()) {
            Err(DataError::Schema { field, .. }) => assert_eq!(field, "extra"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let doc = "{\"name\": \"x\",\n  \"points\": [,]}";
        match parse(doc.as_bytes()) {
            Err(DataError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn large_values_survive_as_strings() {
        let doc = r#"{"name": "x", "points": [{"id": "a", "gr": 1}], "n": [{"from": "a", "to": "theta", "value": "123456789012345678901234567890"}], "m": []}"#;
        let d = parse(doc.as_bytes()).unwrap();
        let again = parse(&serialize(&d)).unwrap();
        assert_eq!(d, again);
        assert!(serialize_string(&d).contains("\"123456789012345678901234567890\""));
    }

    #[test]
    fn hash_is_stable_hex() {
        let h = content_hash(&i1());
        assert_eq!(h.len(), 64);
        assert_eq!(h, content_hash(&parse(I1_DOC.as_bytes()).unwrap()));
    }
}
