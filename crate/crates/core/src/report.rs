//! Uniform check records shared by every verification routine and the CLI.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const REPORT_SCHEMA: &str = "centext.report/1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SubCheck {
    pub name: String,
    pub computed: Value,
    pub expected: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub check_id: String,
    pub claim: String,
    /// Neutral tag of the statement being checked.
    pub location: String,
    pub inputs: Value,
    pub computed: Value,
    pub expected: Value,
    pub items: Vec<SubCheck>,
    pub notes: Vec<String>,
    pub pass: bool,
    pub seed: Option<u64>,
    pub wall_time_ms: u64,
}

/// Accumulates sub-checks; `finish` derives `computed`, `expected` and
/// `pass` from them.
pub struct RecordBuilder {
    rec: CheckRecord,
    start: Instant,
}

impl RecordBuilder {
    pub fn new(check_id: impl Into<String>, claim: impl Into<String>, location: impl Into<String>) -> Self {
        RecordBuilder {
            rec: CheckRecord {
                check_id: check_id.into(),
                claim: claim.into(),
                location: location.into(),
                inputs: Value::Object(Map::new()),
                computed: Value::Null,
                expected: Value::Null,
                items: Vec::new(),
                notes: Vec::new(),
                pass: false,
                seed: None,
                wall_time_ms: 0,
            },
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        if let Value::Object(m) = &mut self.rec.inputs {
            m.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
        }
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.rec.seed = Some(seed);
        self
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.rec.notes.push(s.into());
        self
    }

    /// Adds a sub-check that passes iff `computed == expected` as JSON.
    pub fn eq(&mut self, name: &str, computed: impl Serialize, expected: impl Serialize) -> bool {
        let c = serde_json::to_value(computed).unwrap_or(Value::Null);
        let e = serde_json::to_value(expected).unwrap_or(Value::Null);
        let pass = c == e;
        self.item(name, c, e, pass)
    }

    pub fn item(&mut self, name: &str, computed: impl Serialize, expected: impl Serialize, pass: bool) -> bool {
        self.rec.items.push(SubCheck {
            name: name.into(),
            computed: serde_json::to_value(computed).unwrap_or(Value::Null),
            expected: serde_json::to_value(expected).unwrap_or(Value::Null),
            pass,
        });
        pass
    }

    /// A failed sub-check carrying an error message.
    pub fn error(&mut self, name: &str, err: impl std::fmt::Display) -> bool {
        self.item(name, json!({ "error": err.to_string() }), Value::Null, false)
    }

    pub fn finish(mut self) -> CheckRecord {
        let mut computed = Map::new();
        let mut expected = Map::new();
        for it in &self.rec.items {
            computed.insert(it.name.clone(), it.computed.clone());
            expected.insert(it.name.clone(), it.expected.clone());
        }
        self.rec.computed = Value::Object(computed);
        self.rec.expected = Value::Object(expected);
        self.rec.pass = !self.rec.items.is_empty() && self.rec.items.iter().all(|i| i.pass);
        self.rec.wall_time_ms = self.start.elapsed().as_millis() as u64;
        self.rec
    }
}

impl CheckRecord {
    pub fn item(&self, name: &str) -> Option<&SubCheck> {
        self.items.iter().find(|i| i.name == name)
    }

    pub fn failed_items(&self) -> Vec<&str> {
        self.items.iter().filter(|i| !i.pass).map(|i| i.name.as_str()).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(seed: u64, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let passed = records.iter().filter(|r| r.pass).count();
        Report {
            schema: REPORT_SCHEMA.into(),
            seed,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// Copy with wall times zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.wall_time_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,location,pass,seed,wall_time_ms,failed_items\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&r.check_id),
                csv_field(&r.location),
                r.pass,
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                r.wall_time_ms,
                csv_field(&r.failed_items().join(";"))
            ));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "# Verification report\n\nseed: `{}`; {} checks, {} passed, {} failed\n\n",
            self.seed, self.summary.total, self.summary.passed, self.summary.failed
        );
        out.push_str("| check | claim | result | time (ms) |\n|---|---|---|---|\n");
        for r in &self.records {
            out.push_str(&format!(
                "| `{}` | {} | {} | {} |\n",
                r.check_id,
                r.claim.replace('|', "\\|"),
                if r.pass { "pass" } else { "**FAIL**" },
                r.wall_time_ms
            ));
        }
        for r in &self.records {
            out.push_str(&format!("\n## `{}`\n\n{}\n\n", r.check_id, r.claim));
            out.push_str(&format!("inputs: `{}`\n\n", r.inputs));
            for it in &r.items {
                out.push_str(&format!(
                    "- {} **{}**: computed `{}`, expected `{}`\n",
                    if it.pass { "ok" } else { "FAIL" },
                    it.name,
                    it.computed,
                    it.expected
                ));
            }
            for n in &r.notes {
                out.push_str(&format!("- note: {n}\n"));
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_derives_pass() {
        let mut b = RecordBuilder::new("x", "claim", "tag");
        b.eq("dim", 4, 4);
        let r = b.finish();
        assert!(r.pass);
        assert_eq!(r.computed["dim"], json!(4));
        let mut b = RecordBuilder::new("y", "claim", "tag");
        b.eq("dim", 4, 5);
        b.eq("top", 2, 2);
        let r = b.finish();
        assert!(!r.pass);
        assert_eq!(r.failed_items(), vec!["dim"]);
        let rep = Report::new(7, vec![r.clone()]);
        assert!(rep.to_csv().contains("y,tag,false,,"));
        assert!(rep.to_markdown().contains("**FAIL**"));
    }

    #[test]
    fn empty_record_fails() {
        assert!(!RecordBuilder::new("z", "c", "t").finish().pass);
    }
}
