use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never affects the exit code.
    Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Seconds, as decimal strings.
    pub timings: BTreeMap<String, String>,
}

impl ReportDoc {
    pub fn new(command: impl Into<String>) -> Self {
        ReportDoc {
            command: command.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn check(&mut self, name: &str, ok: bool, value: impl ToString) -> &mut Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { name: name.to_string(), status, value: value.to_string() });
        self
    }

    pub fn value(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.checks.push(Check { name: name.to_string(), status: Status::Value, value: value.to_string() });
        self
    }

    pub fn time(&mut self, name: &str, since: Instant) -> &mut Self {
        self.timings.insert(name.to_string(), format!("{:.3}", since.elapsed().as_secs_f64()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn merge(&mut self, other: ReportDoc) {
        self.checks.extend(other.checks);
        self.timings.extend(other.timings);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Value => "     ",
            };
            let _ = writeln!(s, "{tag} {}: {}", c.name, c.value);
        }
        for (k, v) in &self.timings {
            let _ = writeln!(s, "  time {k}: {v} s");
        }
        s
    }
}
