use std::fmt;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Formats a float with 15 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.14e}")
}

/// One named pass/fail check with its numeric margin.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub margin: f64,
}

/// Line-oriented certificate emitted by every command.
///
/// ```text
/// schema-version: 1
/// command: splice-lspace
/// input k1: 2,3
/// result image: [29/5, 6/1]
/// check image-contained: pass 0.00000000000000e0
/// ```
///
/// Fields appear in insertion order, so documents are byte-stable.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateDocument {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl CertificateDocument {
    pub fn new(command: &str) -> Self {
        CertificateDocument {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.results.push((key.into(), value.to_string()));
        self
    }

    pub fn result_num(&mut self, key: &str, value: f64) -> &mut Self {
        self.result(key, fmt_num(value))
    }

    pub fn check(&mut self, name: &str, pass: bool, margin: f64) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            pass,
            margin,
        });
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get_result(&self, key: &str) -> Option<&str> {
        self.results.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = CertificateDocument::new("");
        let mut seen_version = false;
        let mut seen_command = false;
        for (n, line) in text.lines().enumerate() {
            let err = |msg: &str| Error::Parse {
                line: n + 1,
                msg: msg.into(),
            };
            let (key, value) = line.split_once(": ").ok_or_else(|| err("expected 'key: value'"))?;
            if key == "schema-version" {
                doc.schema_version = value.parse().map_err(|_| err("bad schema version"))?;
                seen_version = true;
            } else if key == "command" {
                doc.command = value.into();
                seen_command = true;
            } else if let Some(k) = key.strip_prefix("input ") {
                doc.inputs.push((k.into(), value.into()));
            } else if let Some(k) = key.strip_prefix("result ") {
                doc.results.push((k.into(), value.into()));
            } else if let Some(k) = key.strip_prefix("check ") {
                let (status, margin) = value
                    .split_once(' ')
                    .ok_or_else(|| err("expected 'pass|fail <margin>'"))?;
                let pass = match status {
                    "pass" => true,
                    "fail" => false,
                    _ => return Err(err("check status must be pass or fail")),
                };
                let margin = margin.parse().map_err(|_| err("bad check margin"))?;
                doc.checks.push(Check {
                    name: k.into(),
                    pass,
                    margin,
                });
            } else {
                return Err(err("unknown field"));
            }
        }
        if !seen_version || !seen_command {
            return Err(Error::Parse {
                line: 0,
                msg: "missing schema-version or command".into(),
            });
        }
        Ok(doc)
    }
}

impl fmt::Display for CertificateDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schema-version: {}", self.schema_version)?;
        writeln!(f, "command: {}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(f, "input {k}: {v}")?;
        }
        for (k, v) in &self.results {
            writeln!(f, "result {k}: {v}")?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "check {}: {} {}",
                c.name,
                if c.pass { "pass" } else { "fail" },
                fmt_num(c.margin)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn render_and_parse() {
        let mut doc = CertificateDocument::new("splice-lspace");
        doc.input("k1", "2,3")
            .result("image", "[29/5, 6/1]")
            .check("image-contained", true, 0.0);
        let text = doc.to_string();
        assert_eq!(
            text,
            "schema-version: 1\ncommand: splice-lspace\ninput k1: 2,3\nresult image: [29/5, 6/1]\ncheck image-contained: pass 0.00000000000000e0\n"
        );
        assert_eq!(CertificateDocument::parse(&text).unwrap(), doc);
    }

    #[test]
    fn parse_errors() {
        assert!(CertificateDocument::parse("command: x\n").is_err());
        assert!(CertificateDocument::parse("schema-version: 1\ncommand: x\nbogus: 1\n").is_err());
        assert!(CertificateDocument::parse("schema-version: 1\ncommand: x\ncheck a: maybe 1\n").is_err());
    }

    proptest! {
        #[test]
        fn documents_round_trip(
            inputs in prop::collection::vec(("[a-z][a-z0-9-]{0,8}", "[ -~]{0,20}"), 0..4),
            margins in prop::collection::vec((any::<bool>(), -1e6..1e6f64), 0..4),
        ) {
            let mut doc = CertificateDocument::new("cmd");
            for (k, v) in &inputs {
                doc.input(k, v);
                doc.result(k, v);
            }
            for (n, (pass, m)) in margins.iter().enumerate() {
                doc.check(&format!("c{n}"), *pass, *m);
            }
            let text = doc.to_string();
            let parsed = CertificateDocument::parse(&text).unwrap();
            prop_assert_eq!(parsed.to_string(), text);
        }
    }
}
