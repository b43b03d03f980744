//! Run reports and their canonical JSON rendering.
//!
//! Object keys are emitted in sorted order and every float is written with
//! 17 significant digits, so identical runs give byte-identical files.

use serde_json::{Map, Number, Value};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Map<String, Value>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self { command: command.to_string(), inputs, outputs: Map::new(), timing_ms: 0 }
    }

    pub fn put(&mut self, key: &str, value: Value) {
        self.outputs.insert(key.to_string(), value);
    }

    pub fn put_f64(&mut self, key: &str, value: f64) -> Result<(), CliError> {
        self.put(key, float(key, value)?);
        Ok(())
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("inputs".into(), self.inputs.clone());
        root.insert("outputs".into(), Value::Object(self.outputs.clone()));
        root.insert("timing_ms".into(), Value::from(self.timing_ms));
        root.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").to_string()));
        Value::Object(root)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        write_value(&self.to_value(), 0, &mut out);
        out.push('\n');
        out
    }
}

/// A JSON number for a finite float; non-finite values are a solver fault.
pub fn float(name: &str, value: f64) -> Result<Value, CliError> {
    Number::from_f64(value)
        .map(Value::Number)
        .ok_or_else(|| CliError::NonFinite { name: name.to_string(), value })
}

pub fn floats(name: &str, values: &[f64]) -> Result<Value, CliError> {
    values.iter().map(|v| float(name, *v)).collect::<Result<Vec<_>, _>>().map(Value::Array)
}

fn write_number(n: &Number, out: &mut String) {
    if n.is_f64() {
        out.push_str(&format!("{:.16e}", n.as_f64().expect("f64 number")));
    } else {
        out.push_str(&n.to_string());
    }
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(n, out),
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(item, level + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<_> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push_str(": ");
                write_value(&map[*key], level + 1, out);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted_and_floats_fixed_width() {
        let mut out = String::new();
        write_value(&json!({"b": 1.0, "a": [1, 0.1], "c": {}}), 0, &mut out);
        assert_eq!(
            out,
            "{\n  \"a\": [\n    1,\n    1.0000000000000001e-1\n  ],\n  \"b\": 1.0000000000000000e0,\n  \"c\": {}\n}"
        );
        let parsed: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["a"][1], json!(0.1));
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(float("x", f64::NAN).is_err());
        assert!(float("x", f64::INFINITY).is_err());
        assert!(float("x", -0.5).is_ok());
    }
}
