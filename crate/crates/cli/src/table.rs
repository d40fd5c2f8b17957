//! Plain-text rendering of a JSON report: one `key  value` row per leaf,
//! with arrays of scalars kept on a single row.

use serde_json::Value;

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn walk(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                walk(&key, child, rows);
            }
        }
        Value::Array(items) if items.iter().all(is_leaf) => {
            rows.push((prefix.to_string(), format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(" : "))));
        }
        Value::Array(items) => {
            for (k, child) in items.iter().enumerate() {
                walk(&format!("{prefix}[{k}]"), child, rows);
            }
        }
        leaf => rows.push((prefix.to_string(), scalar(leaf))),
    }
}

pub fn render(v: &Value) -> String {
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, val)| format!("{k:<width$}  {val}\n")).collect()
}
