//! The document every command produces: plain text for people, JSON for
//! machines.

use serde::Serialize;
use serde_json::Value;

use crate::bicyclic::SElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Normal,
    Absorb,
}

/// An element of `S` as `{"kind": "normal", "n": .., "m": ..}` or
/// `{"kind": "absorb"}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValueDoc {
    pub kind: ValueKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

impl From<SElem> for ValueDoc {
    fn from(x: SElem) -> Self {
        match x {
            SElem::Normal(n, m) => ValueDoc {
                kind: ValueKind::Normal,
                n: Some(n),
                m: Some(m),
            },
            SElem::Absorb => ValueDoc {
                kind: ValueKind::Absorb,
                n: None,
                m: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Value>,
    pub wall_time_ms: u64,
    /// Human-readable rendering.
    #[serde(skip)]
    pub text: String,
    /// Process exit status implied by the outcome.
    #[serde(skip)]
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: impl Into<String>, input: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            value: None,
            result: None,
            trace: None,
            stats: None,
            wall_time_ms: 0,
            text: String::new(),
            exit_code: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_schema() {
        let v = serde_json::to_value(ValueDoc::from(SElem::Normal(2, 0))).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "normal", "n": 2, "m": 0}));
        let v = serde_json::to_value(ValueDoc::from(SElem::Absorb)).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "absorb"}));
    }

    #[test]
    fn optional_fields_are_omitted() {
        let mut r = Report::new("eval", "a*b");
        r.value = Some(SElem::E.into());
        r.text = "e".into();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "input", "value", "wall_time_ms"]);
    }
}
