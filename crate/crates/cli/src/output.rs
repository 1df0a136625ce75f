//! The JSON envelope and its CSV rendering.

use mirabolic::{Error, C64};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Exit status attached to a finished command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Usage,
    Domain,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Usage => 2,
            Status::Domain => 3,
        }
    }
}

/// What a command hands back before rendering.
pub struct Outcome {
    pub result: Value,
    pub precision: Value,
    /// JSON pointer into `result` naming the array rendered as CSV rows.
    pub rows: Option<&'static str>,
    pub status: Status,
}

impl Outcome {
    pub fn ok(result: Value) -> Self {
        Outcome { result, precision: Value::Null, rows: None, status: Status::Ok }
    }

    pub fn rows(mut self, pointer: &'static str) -> Self {
        self.rows = Some(pointer);
        self
    }

    pub fn failure(err: &Error) -> Self {
        let status = match err {
            Error::Parse { .. } => Status::Usage,
            _ => Status::Domain,
        };
        Outcome { result: json!({ "error": error_json(err) }), precision: Value::Null, rows: None, status }
    }
}

pub fn cx(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn error_json(err: &Error) -> Value {
    let mut v = Map::new();
    let kind = match err {
        Error::Pole { function, at } => {
            v.insert("function".into(), json!(function));
            v.insert("at".into(), cx(*at));
            "pole"
        }
        Error::NotPrincipal => "not_principal",
        Error::NotPrimitive { modulus, conductor } => {
            v.insert("modulus".into(), json!(modulus));
            v.insert("conductor".into(), json!(conductor));
            "not_primitive"
        }
        Error::ConvergenceRegion(_) => "convergence_region",
        Error::Strip(_) => "strip",
        Error::ZeroEntry(i) => {
            v.insert("position".into(), json!(i));
            "zero_entry"
        }
        Error::ZeroComponent(i) => {
            v.insert("position".into(), json!(i));
            "zero_component"
        }
        Error::Normalization(_) => "normalization",
        Error::ToleranceNotMet { achieved, requested } => {
            v.insert("achieved".into(), json!(achieved));
            v.insert("requested".into(), json!(requested));
            "tolerance_not_met"
        }
        Error::NonFinite(_) => "non_finite",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Parse { position, .. } => {
            v.insert("position".into(), json!(position));
            "parse"
        }
    };
    let mut out = Map::new();
    out.insert("kind".into(), json!(kind));
    out.insert("message".into(), json!(err.to_string()));
    out.extend(v);
    Value::Object(out)
}

pub fn render_json(command: &str, inputs: &Value, out: &Outcome) -> String {
    let env = json!({
        "command": command,
        "inputs": inputs,
        "result": out.result,
        "precision": out.precision,
        "version": env!("CARGO_PKG_VERSION"),
    });
    serde_json::to_string_pretty(&env).expect("JSON values always serialize")
}

/// Flattens `result` (or the array at `out.rows`) into a table with dotted
/// column names. Numbers are written with the same text as in the JSON.
pub fn render_csv(out: &Outcome) -> String {
    let records: Vec<&Value> = match out.rows.and_then(|p| out.result.pointer(p)) {
        Some(Value::Array(items)) => items.iter().collect(),
        _ => vec![&out.result],
    };
    let flat: Vec<Vec<(String, String)>> = records
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            cells
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in &flat {
        let line: Vec<&str> = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()))
            .collect();
        w.write_record(&line).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_from_pointer() {
        let out = Outcome::ok(json!({ "rows": [{ "r": [1, 2], "value": cx(C64::new(0.5, -1.0)) }, { "r": [3, 4], "error": "x" }] }))
            .rows("/rows");
        let text = render_csv(&out);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("r.0,r.1,value.re,value.im,error"));
        assert_eq!(lines.next(), Some("1,2,0.5,-1.0,"));
        assert_eq!(lines.next(), Some("3,4,,,x"));
    }

    #[test]
    fn single_record_fallback() {
        let text = render_csv(&Outcome::ok(json!({ "a": 1, "b": { "c": true } })));
        assert_eq!(text, "a,b.c\n1,true\n");
    }
}
