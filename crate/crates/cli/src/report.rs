use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "stubborn/run-report/v1";

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Inapplicable,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub tool: Tool,
    pub command: String,
    pub status: Status,
    pub inputs: Value,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Value>,
    /// Wall-clock seconds per phase; only with `--timings` so that exact
    /// commands stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// What a subcommand hands back on success.
#[derive(Default)]
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub tolerances: Option<Value>,
    pub seeds: Option<Value>,
    pub timings: BTreeMap<String, f64>,
}

pub enum Failure {
    /// Bad input: exit 1, message on stderr.
    Input(anyhow::Error),
    /// The method does not apply: exit 2, still a JSON report.
    Inapplicable { inputs: Value, reason: String, hint: Option<String> },
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

pub fn input_err(msg: impl std::fmt::Display) -> Failure {
    Failure::Input(anyhow::anyhow!("{msg}"))
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn envelope(command: &str, status: Status, out: Outcome, timings: bool) -> RunReport {
    RunReport {
        schema_version: SCHEMA_VERSION,
        tool: Tool { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") },
        command: command.to_string(),
        status,
        inputs: out.inputs,
        results: out.results,
        tolerances: out.tolerances,
        seeds: out.seeds,
        timings: timings.then_some(out.timings),
    }
}
