use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

pub enum Outcome {
    Ok,
    Rejected,
    Disagreement,
}

/// `{command, ok, ...fields, elapsed_ms}`.
pub struct Report {
    command: String,
    ok: bool,
    disagreement: bool,
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ok: true,
            disagreement: false,
            fields: Map::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report fields serialize");
        self.fields.insert(key.to_string(), v);
        self
    }

    pub fn fail_if(&mut self, cond: bool) -> &mut Self {
        if cond {
            self.ok = false;
        }
        self
    }

    /// Two independent checks gave different answers.
    pub fn disagree(&mut self) -> &mut Self {
        self.ok = false;
        self.disagreement = true;
        self
    }

    pub fn outcome(&self) -> Outcome {
        if self.disagreement {
            Outcome::Disagreement
        } else if self.ok {
            Outcome::Ok
        } else {
            Outcome::Rejected
        }
    }

    pub fn render(&self, elapsed: Duration) -> String {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("ok".into(), Value::Bool(self.ok));
        for (k, v) in &self.fields {
            out.insert(k.clone(), v.clone());
        }
        let ms = elapsed.as_secs_f64() * 1000.0;
        out.insert("elapsed_ms".into(), serde_json::json!((ms * 1000.0).round() / 1000.0));
        serde_json::to_string(&Value::Object(out)).expect("report serializes")
    }
}
