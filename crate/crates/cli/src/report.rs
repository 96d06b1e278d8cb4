use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::source::NetworkSummary;

/// Bumped whenever a field of the JSON report changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// What a subcommand hands back to `main` for printing.
pub struct Outcome {
    pub network: Option<NetworkSummary>,
    pub warnings: Vec<String>,
    pub result: Value,
    pub text: String,
    /// Checks that did not hold; a nonempty list means exit code 1.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn new(result: Value, text: String) -> Self {
        Outcome {
            network: None,
            warnings: Vec::new(),
            result,
            text,
            failures: Vec::new(),
        }
    }
}

#[derive(Serialize)]
pub struct AnalysisReport<'a> {
    pub schema_version: u32,
    pub command: &'a [String],
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<&'a NetworkSummary>,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    pub warnings: &'a [String],
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: &'a Value,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    pub failures: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<&'a CliError>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl AnalysisReport<'_> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

pub fn human_bytes(bytes: u128) -> String {
    const UNITS: [&str; 5] = ["B", "KiB", "MiB", "GiB", "TiB"];
    let mut value = bytes as f64;
    let mut unit = 0;
    while value >= 1024.0 && unit + 1 < UNITS.len() {
        value /= 1024.0;
        unit += 1;
    }
    if unit == 0 {
        format!("{bytes} B")
    } else {
        format!("{value:.1} {}", UNITS[unit])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_units() {
        assert_eq!(human_bytes(12), "12 B");
        assert_eq!(human_bytes(2048), "2.0 KiB");
        assert_eq!(human_bytes(3 << 30), "3.0 GiB");
    }
}
