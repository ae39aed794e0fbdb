use serde_json::{Map, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: u64 = 1;

/// A command result: scalar fields plus an optional list of rows.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub fields: Map<String, Value>,
    pub rows: Option<(&'static str, Vec<Map<String, Value>>)>,
}

impl Report {
    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), v.into());
        self
    }

    pub fn to_json(&self, command: &str) -> Value {
        let mut m = Map::new();
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
        m.insert("command".into(), command.into());
        m.extend(self.fields.clone());
        if let Some((key, rows)) = &self.rows {
            m.insert((*key).into(), Value::Array(rows.iter().cloned().map(Value::Object).collect()));
        }
        Value::Object(m)
    }

    pub fn render(&self, command: &str, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json(command)).expect("json");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}: {}\n", scalar(v)));
        }
        if let Some((key, rows)) = &self.rows {
            if !self.fields.is_empty() {
                out.push('\n');
            }
            if rows.is_empty() {
                out.push_str(&format!("({key}: none)\n"));
            }
            let header = columns(rows);
            if !header.is_empty() {
                out.push_str(&header.join("\t"));
                out.push('\n');
            }
            for r in rows {
                let cells: Vec<String> = header.iter().map(|h| r.get(h).map(scalar).unwrap_or_default()).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.rows {
            Some((_, rows)) => {
                let header = columns(rows);
                w.write_record(&header).expect("csv");
                for r in rows {
                    w.write_record(header.iter().map(|h| r.get(h).map(scalar).unwrap_or_default()))
                        .expect("csv");
                }
            }
            None => {
                w.write_record(["key", "value"]).expect("csv");
                for (k, v) in &self.fields {
                    w.write_record([k.clone(), scalar(v)]).expect("csv");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }
}

fn columns(rows: &[Map<String, Value>]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            a.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        Value::Object(o) if o.get("text").is_some_and(Value::is_string) => scalar(&o["text"]),
        other => other.to_string(),
    }
}
