//! Plain-text rendering of a JSON payload. Lossy: nested values are printed
//! as compact JSON in their cell.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            xs.iter().map(cell).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

fn rows(items: &[Value]) -> Option<String> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    if !items.iter().all(|i| i.as_object().is_some_and(|o| o.keys().eq(keys.iter().copied()))) {
        return None;
    }
    let mut table: Vec<Vec<String>> = vec![keys.iter().map(|k| k.to_string()).collect()];
    table.extend(items.iter().map(|i| keys.iter().map(|k| cell(&i[k.as_str()])).collect()));
    let widths: Vec<usize> =
        (0..keys.len()).map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    Some(
        table
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n"),
    )
}

pub fn table(v: &Value) -> String {
    match v {
        Value::Array(items) => rows(items).unwrap_or_else(|| cell(v)),
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            let mut out = Vec::new();
            for (k, x) in map {
                match x {
                    Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                        out.push(format!("{k}:"));
                        out.push(rows(items).unwrap_or_else(|| cell(x)));
                    }
                    _ => out.push(format!("{k:<width$}  {}", cell(x))),
                }
            }
            out.join("\n")
        }
        other => cell(other),
    }
}
