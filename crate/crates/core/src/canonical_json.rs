//! Deterministic single-line JSON with `", "` and `": "` separators.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use serde_json::value::RawValue;

struct Canonical;

impl Formatter for Canonical {
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

fn inline<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, Canonical);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization of plain data cannot fail");
    out
}

/// Serializes `value` canonically, followed by a newline.
pub fn to_vec<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut out = inline(value);
    out.push(b'\n');
    out
}

/// Canonical serialization kept verbatim when embedded in another document.
pub fn to_raw<T: Serialize + ?Sized>(value: &T) -> Box<RawValue> {
    let text = String::from_utf8(inline(value)).expect("serde_json emits UTF-8");
    RawValue::from_string(text).expect("serde_json emits valid JSON")
}

pub fn to_string<T: Serialize + ?Sized>(value: &T) -> String {
    String::from_utf8(to_vec(value)).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    #[test]
    fn separators() {
        let v = serde_json::json!({"a": [1, 2], "b": {"c": null}});
        assert_eq!(super::to_string(&v), "{\"a\": [1, 2], \"b\": {\"c\": null}}\n");
    }
}
