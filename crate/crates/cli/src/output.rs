//! JSON and text rendering.

use serde_json::{json, Map, Value};

use rkit::{Genome, Operation, Scenario};

pub const SCHEMA: u32 = 1;

pub fn op_json(op: &Operation) -> Value {
    let dcjs: Vec<Value> = op
        .dcjs()
        .iter()
        .map(|d| {
            json!({
                "cut": d.cut.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "join": d.join.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut v = json!({ "kind": op.kind(), "text": op.to_string(), "dcjs": dcjs });
    if let Operation::Bd { duplicate, .. } = op {
        v["duplicate"] = duplicate.iter().map(|d| Value::String(d.ext.to_string())).collect();
    }
    v
}

/// Each step with the genome it produces.
pub fn scenario_json(start: &Genome, s: &Scenario) -> Value {
    let mut cur = start.clone();
    let steps: Vec<Value> = s
        .ops
        .iter()
        .map(|op| {
            let mut v = op_json(op);
            if let Ok(next) = op.apply(&cur) {
                v["genome"] = Value::String(next.to_string());
                cur = next;
            }
            v
        })
        .collect();
    Value::Array(steps)
}

pub fn scenario_text(start: &Genome, s: &Scenario) -> String {
    let mut out = String::new();
    let mut cur = start.clone();
    for (i, op) in s.ops.iter().enumerate() {
        out.push_str(&format!("{:>3}. {op}\n", i + 1));
        if let Ok(next) = op.apply(&cur) {
            out.push_str(&format!("     -> {next}\n"));
            cur = next;
        }
    }
    out
}

/// A report printed either as JSON or as aligned `key: value` lines followed by a free-form
/// tail.
#[derive(Default)]
pub struct Report {
    fields: Map<String, Value>,
    tail: String,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut r = Report::default();
        r.fields.insert("schema".into(), json!(SCHEMA));
        r.fields.insert("command".into(), json!(command));
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Report {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn scenario(&mut self, start: &Genome, s: &Scenario) -> &mut Report {
        self.fields.insert("scenario".into(), scenario_json(start, s));
        self.tail.push_str(&scenario_text(start, s));
        self
    }

    pub fn tail(&mut self, text: &str) -> &mut Report {
        self.tail.push_str(text);
        self
    }

    pub fn print(&self, as_json: bool) {
        if as_json {
            println!("{}", Value::Object(self.fields.clone()));
            return;
        }
        let shown = |k: &str, v: &Value| k != "schema" && k != "command" && is_flat(v);
        let width = self.fields.iter().filter(|(k, v)| shown(k, v)).map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            if !shown(k, v) {
                continue;
            }
            let text = match v {
                Value::String(s) => s.clone(),
                Value::Array(a) => a
                    .iter()
                    .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                    .collect::<Vec<_>>()
                    .join(" "),
                other => other.to_string(),
            };
            println!("{k:<width$}  {text}");
        }
        print!("{}", self.tail);
    }
}

/// Values printed on one line in text mode.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}
