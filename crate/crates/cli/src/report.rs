use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

/// Line-oriented `key: value` report with a fixed header.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub entries: Vec<Entry>,
    pub pass: bool,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in hash {
        let _ = write!(out, "{b:02x}");
    }
    out
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            tool: "cancellation-lab".into(),
            version: VERSION.into(),
            command: command.into(),
            input_digest: digest(input),
            seed: None,
            entries: Vec::new(),
            pass: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn line(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push(Entry { key: key.into(), value: value.to_string() });
    }

    /// Records a pass/fail verdict; any failure fails the report.
    pub fn verdict(&mut self, key: &str, ok: bool) {
        self.line(key, if ok { "pass" } else { "fail" });
        self.pass &= ok;
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        }
        let mut out = String::new();
        let _ = writeln!(out, "tool: {} {}", self.tool, self.version);
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "input: sha256:{}", self.input_digest);
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed: {s}");
        }
        for e in &self.entries {
            let _ = writeln!(out, "{}: {}", e.key, e.value);
        }
        let _ = writeln!(out, "result: {}", if self.pass { "pass" } else { "fail" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn render_is_line_oriented() {
        let mut r = Report::new("check", b"x").with_seed(3);
        r.line("faces", 2);
        r.verdict("helly", false);
        let text = r.render(false);
        assert!(text.lines().all(|l| l.contains(": ")));
        assert!(text.ends_with("result: fail\n"));
        let v: serde_json::Value = serde_json::from_str(&r.render(true)).expect("json");
        assert_eq!(v["entries"][1]["value"], "fail");
        assert_eq!(v["seed"], 3);
    }
}
