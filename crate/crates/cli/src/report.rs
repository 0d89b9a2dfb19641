//! Machine-readable run reports.

use cdala::report::Check;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub inputs: Vec<String>,
    pub outputs: Map<String, Value>,
    pub checks: Vec<CheckJson>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            params: Map::new(),
            inputs: Vec::new(),
            outputs: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(k.into(), v.into());
        self
    }

    pub fn output(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(k.into(), v.into());
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(CheckJson {
            name: c.name,
            status: c.status.as_str().into(),
            details: c.details,
        });
        self
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != "fail")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for (k, v) in &self.params {
            s += &format!("  {} = {}\n", k, plain(v));
        }
        for i in &self.inputs {
            s += &format!("  input: {}\n", i);
        }
        for (k, v) in &self.outputs {
            s += &format!("  {}: {}\n", k, plain(v));
        }
        for c in &self.checks {
            s += &format!("  [{}] {}", c.status, c.name);
            if !c.details.is_empty() {
                s += &format!(": {}", c.details);
            }
            s.push('\n');
        }
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
