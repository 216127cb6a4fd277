use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub result: Option<Value>,
    pub error: Option<ErrorInfo>,
    pub timing_ms: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub name: String,
    pub message: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs,
            result: None,
            error: None,
            timing_ms: 0,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
