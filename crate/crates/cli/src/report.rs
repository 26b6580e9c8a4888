//! Structured command output.

use std::time::Instant;

use serde::Serialize;

use crate::error::CliResult;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: Option<String>,
    pub input_sha256: Option<String>,
    pub result: serde_json::Value,
    /// Parts skipped because the coefficient ring is outside exact support.
    pub partial: Vec<String>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: &str, input: Option<(String, String)>, result: impl Serialize, partial: Vec<String>, started: Instant) -> CliResult<Self> {
        let (input, input_sha256) = input.map_or((None, None), |(a, b)| (Some(a), Some(b)));
        Ok(Report {
            tool: "stabmod",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            input,
            input_sha256,
            result: serde_json::to_value(result).expect("results serialize"),
            partial,
            elapsed_ms: started.elapsed().as_millis(),
        })
    }

    pub fn exit_code(&self) -> i32 {
        if self.partial.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with every timing field removed, for reproducibility checks.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        strip_timings(&mut v);
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }
}

fn strip_timings(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.retain(|k, _| !k.ends_with("elapsed_ms"));
            map.values_mut().for_each(strip_timings);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
