use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// One gated quantity: passes when `|value - expected| <= tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            expected,
            tolerance,
        }
    }

    /// `value ≤ bound`, recorded as a deviation from zero.
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value, 0.0, bound)
    }

    pub fn pass(&self) -> bool {
        (self.value - self.expected).abs() <= self.tolerance
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Check", 5)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("expected", &self.expected)?;
        st.serialize_field("tolerance", &self.tolerance)?;
        st.serialize_field("pass", &self.pass())?;
        st.end()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, Value>,
    pub runtime_ms: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.to_owned(), serde_json::to_value(value).expect("serializable parameter"));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.to_owned(), serde_json::to_value(value).expect("serializable result"));
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    /// Replaces every tolerance with `tol`.
    pub fn override_tolerance(&mut self, tol: f64) {
        for c in &mut self.checks {
            c.tolerance = tol;
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if !self.checks.is_empty() {
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
            let _ = writeln!(out, "  {:width$}  {:>24}  {:>24}  {:>10}  result", "check", "value", "expected", "tolerance");
            for c in &self.checks {
                let _ = writeln!(
                    out,
                    "  {:width$}  {:>24.17e}  {:>24.17e}  {:>10.1e}  {}",
                    c.name,
                    c.value,
                    c.expected,
                    c.tolerance,
                    if c.pass() { "PASS" } else { "FAIL" }
                );
            }
        }
        let _ = writeln!(out, "  runtime {} ms", self.runtime_ms);
        out
    }
}
