use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value as Json};

use super::zoo::Budgets;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    ExceedsCutoff,
    Unstable,
    UnsupportedInstance,
    ResourceLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// `witness` is the full instance, enough to re-run the check.
    Fail { witness: Json },
    Skipped { reason: SkipReason },
    /// Recorded without being asserted.
    Control { observed: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Verdict::Skipped { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub detail: String,
    /// Wall-clock time; left out of the JSON so reports stay byte-stable.
    #[serde(skip)]
    pub millis: u128,
}

impl CheckReport {
    pub fn new(check: &str, instance: &str, verdict: Verdict, detail: impl Into<String>) -> Self {
        CheckReport { check: check.into(), instance: instance.into(), verdict, detail: detail.into(), millis: 0 }
    }

    pub fn pass(check: &str, instance: &str, detail: impl Into<String>) -> Self {
        Self::new(check, instance, Verdict::Pass, detail)
    }

    pub fn fail(check: &str, instance: &str, witness: Json, detail: impl Into<String>) -> Self {
        Self::new(check, instance, Verdict::Fail { witness }, detail)
    }

    pub fn skip(check: &str, instance: &str, reason: SkipReason, detail: impl Into<String>) -> Self {
        Self::new(check, instance, Verdict::Skipped { reason }, detail)
    }

    /// Unsupported instances and exhausted budgets are skips; anything else failed.
    pub fn from_error(check: &str, instance: &str, witness: Json, e: &Error) -> Self {
        match e {
            Error::UnsupportedInstance(m) => Self::skip(check, instance, SkipReason::UnsupportedInstance, m.clone()),
            Error::ResourceLimit { reason, .. } => Self::skip(check, instance, SkipReason::ResourceLimit, reason.clone()),
            other => Self::fail(check, instance, witness, other.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub control: usize,
}

impl Tally {
    fn add(&mut self, v: &Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail { .. } => self.fail += 1,
            Verdict::Skipped { .. } => self.skipped += 1,
            Verdict::Control { .. } => self.control += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped + self.control
    }

    /// Skipped share among asserted checks.
    pub fn skipped_fraction(&self) -> f64 {
        let n = self.pass + self.fail + self.skipped;
        if n == 0 {
            0.0
        } else {
            self.skipped as f64 / n as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub count: usize,
    pub budgets: Budgets,
    /// Mutant injected for the whole run, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutant: Option<crate::mutation::Mutant>,
}

impl SuiteConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SuiteConfig { seed, count, budgets: Budgets::default(), mutant: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    /// Counts per check name, in first-appearance order.
    pub fn by_check(&self) -> Vec<(String, Tally)> {
        let mut out: Vec<(String, Tally)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|(n, _)| *n == c.check) {
                Some((_, t)) => t.add(&c.verdict),
                None => {
                    let mut t = Tally::default();
                    t.add(&c.verdict);
                    out.push((c.check.clone(), t));
                }
            }
        }
        out
    }

    pub fn totals(&self) -> Tally {
        let mut t = Tally::default();
        for c in &self.checks {
            t.add(&c.verdict);
        }
        t
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.verdict.is_fail())
    }

    pub fn to_json(&self) -> Json {
        let summary: serde_json::Map<String, Json> = self
            .by_check()
            .into_iter()
            .map(|(n, t)| (n, serde_json::to_value(t).expect("plain struct")))
            .collect();
        json!({
            "config": self.config,
            "checks": self.checks,
            "summary": summary,
            "totals": self.totals(),
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "seed {} count {}", self.config.seed, self.config.count);
        for (name, t) in self.by_check() {
            let _ = writeln!(
                s,
                "{name:<28} pass {:>3}  fail {:>3}  skipped {:>3}  control {:>3}",
                t.pass, t.fail, t.skipped, t.control
            );
        }
        for c in self.checks.iter().filter(|c| c.verdict.is_fail()) {
            let _ = writeln!(s, "FAIL {} [{}]: {}", c.check, c.instance, c.detail);
        }
        let t = self.totals();
        let _ = writeln!(s, "total: {} pass, {} fail, {} skipped, {} control", t.pass, t.fail, t.skipped, t.control);
        s
    }
}
