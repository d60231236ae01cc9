//! Run reports: a stable text form and a JSON twin with the same content.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL: &str = "artinforge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Bumped whenever canonical element, class or character orderings change.
pub const ORDERINGS: &str = "bfs-1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Section {
    pub name: String,
    pub lines: Vec<String>,
    #[serde(default)]
    pub data: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub orderings: String,
    pub command: String,
    pub seeds: Vec<(String, u64)>,
    pub inputs: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub passed: usize,
    pub failed: usize,
    /// Filled only with `--timings`, so reports stay byte-identical by default.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<(String, f64)>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            orderings: ORDERINGS.into(),
            command: command.into(),
            seeds: Vec::new(),
            inputs: Vec::new(),
            sections: Vec::new(),
            passed: 0,
            failed: 0,
            timings: Vec::new(),
        }
    }

    pub fn input(&mut self, k: &str, v: impl ToString) {
        self.inputs.push((k.into(), v.to_string()));
    }

    pub fn seed(&mut self, k: &str, v: u64) {
        self.seeds.push((k.into(), v));
    }

    pub fn section(&mut self, name: &str, lines: Vec<String>, data: Value) {
        self.sections.push(Section { name: name.into(), lines, data });
    }

    pub fn check(&mut self, ok: bool) -> bool {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        ok
    }

    pub fn text(&self) -> String {
        let mut out = format!("{} {} orderings={}\ncommand: {}\n", self.tool, self.version, self.orderings, self.command);
        for (k, v) in &self.seeds {
            out += &format!("seed {k}={v}\n");
        }
        for (k, v) in &self.inputs {
            out += &format!("input {k}={v}\n");
        }
        for s in &self.sections {
            out += &format!("== {} ==\n", s.name);
            for l in &s.lines {
                out += l;
                out.push('\n');
            }
        }
        for (k, v) in &self.timings {
            out += &format!("time {k}={v:.3}s\n");
        }
        out += &format!("checks passed={} failed={}\n", self.passed, self.failed);
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("table");
        r.input("group", "S3");
        r.seed("split", 7);
        r.section("t", vec!["a".into()], serde_json::json!({"k": [1, 2]}));
        r.check(true);
        let back: Report = serde_json::from_str(&r.json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.json(), r.json());
    }
}
