//! The JSON report written by `fit`, `construct` and `experiment`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisEntry {
    pub rho: f64,
    pub theta: f64,
    pub power: u32,
    pub b: f64,
    pub c: f64,
}

/// Fields serialize in declaration order; maps are sorted by key.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<BasisEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Map<String, Value>>>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            coefficients: None,
            initial: None,
            bases: None,
            mse: None,
            bound: None,
            diagnostics: None,
            table: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    /// Pretty JSON with a trailing newline. Fails on any non-finite number,
    /// which serde_json would otherwise write as `null`.
    pub fn to_json(&self) -> Result<String> {
        self.check_finite()?;
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Invariant(format!("report serialization: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    fn check_finite(&self) -> Result<()> {
        let mut bad = Vec::new();
        let mut check = |name: &str, v: f64| {
            if !v.is_finite() {
                bad.push(name.to_string());
            }
        };
        for v in self.coefficients.iter().flatten() {
            check("coefficients", *v);
        }
        for v in self.initial.iter().flatten() {
            check("initial", *v);
        }
        for e in self.bases.iter().flatten() {
            for v in [e.rho, e.theta, e.b, e.c] {
                check("bases", v);
            }
        }
        if let Some(v) = self.mse {
            check("mse", v);
        }
        if let Some(v) = self.bound {
            check("bound", v);
        }
        match bad.first() {
            None => Ok(()),
            Some(name) => Err(CliError::Numeric(format!(
                "non-finite value in report field `{name}`"
            ))),
        }
    }
}

/// A JSON number, or an error naming the field when `v` is not finite.
pub fn number(field: &str, v: f64) -> Result<Value> {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .ok_or_else(|| CliError::Numeric(format!("non-finite value in report field `{field}`")))
}
