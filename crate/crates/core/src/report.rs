//! Versioned JSON reports with named pass/fail checks.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::field::{Field, Gf};

pub const SCHEMA: &str = "prym5-report/1";

/// Parameters shared by every command.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub field: Gf,
    pub seed: u64,
    pub budget_points: u64,
    pub budget_lines: u64,
}

impl RunConfig {
    pub fn new(field: Gf, seed: u64) -> Self {
        RunConfig { field, seed, budget_points: 1 << 24, budget_lines: 10_000_000 }
    }
}

/// One named verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub tag: String,
    pub pass: bool,
}

/// A command's output: the checks it ran and the data they were computed from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub field: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, field: &Gf, seed: Option<u64>) -> Self {
        Report { schema: SCHEMA, command: command.to_string(), field: field.tag(), seed, checks: Vec::new(), data: Map::new() }
    }

    pub fn check(&mut self, tag: &str, pass: bool) -> bool {
        self.checks.push(Check { tag: tag.to_string(), pass });
        pass
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.tag.as_str()).collect()
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} over {}", self.command, self.field);
        if let Some(seed) = self.seed {
            s += &format!(" (seed {seed})");
        }
        s.push('\n');
        for c in &self.checks {
            s += &format!("  [{}] {}\n", if c.pass { "pass" } else { "FAIL" }, c.tag);
        }
        s
    }
}
