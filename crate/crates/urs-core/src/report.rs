//! Pass/fail reports shared by the command-line runner and the
//! verification suites.

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub command: String,
    pub pass: bool,
    pub residual_count: usize,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn from_failures(command: &str, failures: Vec<String>) -> Self {
        CheckReport {
            command: command.to_string(),
            pass: failures.is_empty(),
            residual_count: failures.len(),
            details: failures,
        }
    }

    pub fn merge(command: &str, parts: Vec<CheckReport>) -> Self {
        let mut details = Vec::new();
        let mut residual_count = 0;
        for p in parts {
            residual_count += p.residual_count;
            details.extend(
                p.details
                    .into_iter()
                    .map(|d| format!("{}: {}", p.command, d)),
            );
        }
        CheckReport {
            command: command.to_string(),
            pass: residual_count == 0,
            residual_count,
            details,
        }
    }

    pub fn to_value(&self, config: Value) -> Value {
        json!({
            "command": self.command,
            "config": config,
            "pass": self.pass,
            "residual_count": self.residual_count,
            "details": self.details,
        })
    }
}
