use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

/// How a statistic is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "==")]
    Equal,
}

impl Relation {
    pub fn holds(self, statistic: f64, threshold: f64) -> bool {
        match self {
            Relation::AtMost => statistic <= threshold,
            Relation::Below => statistic < threshold,
            Relation::AtLeast => statistic >= threshold,
            Relation::Equal => statistic == threshold,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Below => "<",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub statistic: f64,
    pub threshold: f64,
    pub relation: Relation,
    pub pass: bool,
    pub sample_size: u64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckRecord>,
    /// Auxiliary data such as histograms; not part of the verdict.
    pub data: BTreeMap<String, Value>,
}

impl TestReport {
    pub fn new(suite: &str, seed: Option<u64>) -> Self {
        Self { suite: suite.to_string(), seed, checks: Vec::new(), data: BTreeMap::new() }
    }

    /// Records a check; `pass` is derived from the relation.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        statistic: f64,
        relation: Relation,
        threshold: f64,
        sample_size: u64,
    ) -> bool {
        let pass = relation.holds(statistic, threshold);
        self.checks.push(CheckRecord {
            suite: self.suite.clone(),
            check: name.into(),
            statistic,
            threshold,
            relation,
            pass,
            sample_size,
            seed: self.seed,
        });
        pass
    }

    /// Count of mismatches that must be zero.
    pub fn zero(&mut self, name: impl Into<String>, mismatches: u64, sample_size: u64) -> bool {
        self.check(name, mismatches as f64, Relation::Equal, 0.0, sample_size)
    }

    pub fn note(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    /// One JSON object per check, each on its own line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> String {
        json!({
            "suite": self.suite,
            "summary": true,
            "pass": self.passed(),
            "checks": self.checks.len(),
            "failed": self.failed(),
            "seed": self.seed,
            "data": self.data,
        })
        .to_string()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,statistic,threshold,relation,pass,sample_size,seed\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},\"{}\",{},{},{},{},{},{}\n",
                c.suite,
                c.check.replace('"', "\"\""),
                c.statistic,
                c.threshold,
                c.relation.symbol(),
                c.pass,
                c.sample_size,
                c.seed.map(|s| s.to_string()).unwrap_or_default()
            ));
        }
        out
    }
}
