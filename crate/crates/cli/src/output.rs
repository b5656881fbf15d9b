//! Output formats and atomic file writes.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// CSV view of a result. Experiment reports become one row per trial with
/// one column per measured quantity; anything else becomes `key,value` rows.
pub fn to_csv(v: &Value) -> String {
    let mut out = String::new();
    if let Some(details) = v.get("details").and_then(Value::as_array) {
        let keys: BTreeSet<&str> = details
            .iter()
            .filter_map(|d| d.get("measured").and_then(Value::as_object))
            .flat_map(|m| m.keys().map(String::as_str))
            .collect();
        let mut header = vec!["trial", "label", "status", "violation", "inputs_digest"];
        header.extend(keys.iter().copied());
        out.push_str(&header.join(","));
        out.push('\n');
        for d in details {
            let mut row: Vec<String> =
                ["trial", "label", "status", "violation", "inputs_digest"].iter().map(|k| cell(&d[*k])).collect();
            row.extend(keys.iter().map(|k| cell(&d["measured"][*k])));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        return out;
    }
    out.push_str("key,value\n");
    if let Some(obj) = v.as_object() {
        for (k, x) in obj {
            out.push_str(&format!("{},{}\n", cell(&Value::String(k.clone())), cell(x)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flat_csv() {
        let s = to_csv(&json!({"center": [0.5, 0.5], "radius": 0.5}));
        assert_eq!(s, "key,value\ncenter,0.5;0.5\nradius,0.5\n");
    }

    #[test]
    fn report_csv() {
        let v = json!({"details": [
            {"trial": 0, "label": "a,b", "status": "pass", "violation": -1.0, "inputs_digest": "ff", "measured": {"x": 1.5}},
            {"trial": 1, "label": "c", "status": "fail", "violation": 2.0, "inputs_digest": "00", "measured": {"y": 3.0}}
        ]});
        let s = to_csv(&v);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "trial,label,status,violation,inputs_digest,x,y");
        assert_eq!(lines[1], "0,\"a,b\",pass,-1.0,ff,1.5,");
        assert_eq!(lines[2], "1,c,fail,2.0,00,,3.0");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
    }
}
