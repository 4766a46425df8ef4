//! Verification reports: one record per check, rendered as text for people and
//! as JSON (`superflag-report/1`) for machines.

use std::fmt;
use std::time::Duration;

use serde::Serialize;

pub const SCHEMA: &str = "superflag-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    #[serde(serialize_with = "millis")]
    pub duration: Duration,
    pub version: String,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            checks: Vec::new(),
            duration: Duration::ZERO,
            version: VERSION.to_string(),
        }
    }

    pub fn check(
        &mut self,
        id: impl Into<String>,
        anchor: &str,
        ok: bool,
        witness: impl Into<String>,
    ) -> bool {
        self.checks.push(CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: witness.into(),
        });
        ok
    }

    /// Records an error raised while running a check as a failure.
    pub fn error(&mut self, id: impl Into<String>, anchor: &str, err: &crate::Error) -> bool {
        self.check(id, anchor, false, format!("error: {err}"))
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// Merges sub-reports into one, prefixing check ids with the sub-suite name.
    pub fn aggregate(name: &str, parts: Vec<SuiteReport>) -> SuiteReport {
        let mut out = SuiteReport::new(name);
        for p in parts {
            out.duration += p.duration;
            out.checks.extend(p.checks.into_iter().map(|mut c| {
                c.id = format!("{}/{}", p.suite, c.id);
                c
            }));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": SCHEMA,
            "suite": self.suite,
            "version": self.version,
            "duration_ms": self.duration.as_millis() as u64,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            write!(f, "[{tag}] {}  ({})", c.id, c.anchor)?;
            if !c.witness.is_empty() {
                write!(f, "\n       {}", c.witness.replace('\n', "\n       "))?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} checks, {} failed, {:.2}s (superflag {})",
            self.suite,
            self.checks.len(),
            failed,
            self.duration.as_secs_f64(),
            self.version
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = SuiteReport::new("demo");
        r.check("a", "x = x", true, "");
        r.check("b", "y = y", false, "y != y");
        let j = r.to_json();
        assert_eq!(j["schema"], SCHEMA);
        assert_eq!(j["passed"], false);
        assert_eq!(j["checks"][1]["status"], "fail");
        assert_eq!(j["checks"][0]["anchor"], "x = x");
        let agg = SuiteReport::aggregate("all", vec![r]);
        assert_eq!(agg.checks[0].id, "demo/a");
    }
}
