use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::norms::ExponentPair;

/// `lhs / rhs`, with the degenerate cases kept apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio {
    Finite(f64),
    /// `rhs = 0 < lhs`; only possible through the constant-factor terms,
    /// which the sequence norm does not read.
    Infinite,
    /// `lhs = rhs = 0`.
    Undefined,
}

impl Ratio {
    pub fn of(lhs: f64, rhs: f64) -> Self {
        if rhs > 0.0 {
            Ratio::Finite(lhs / rhs)
        } else if lhs > 0.0 {
            Ratio::Infinite
        } else {
            Ratio::Undefined
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Ratio::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Ratio::Finite(x) => serializer.serialize_f64(*x),
            Ratio::Infinite => serializer.serialize_str("inf"),
            Ratio::Undefined => serializer.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum RecordExponents {
    Pair(ExponentPair),
    Single { p: f64 },
}

/// One function-side vs coefficient-side comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRecord {
    pub check: String,
    pub family: String,
    /// `full`, or `pure` for the function with its constant-factor terms removed.
    pub variant: String,
    pub level: u32,
    pub exponents: RecordExponents,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: Ratio,
}

impl RatioRecord {
    pub fn new(
        check: &str,
        family: impl Into<String>,
        level: u32,
        exponents: RecordExponents,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        Self {
            check: check.to_string(),
            family: family.into(),
            variant: "full".to_string(),
            level,
            exponents,
            lhs,
            rhs,
            ratio: Ratio::of(lhs, rhs),
        }
    }

    pub fn with_variant(mut self, variant: &str) -> Self {
        self.variant = variant.to_string();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Not judged against the ratio bracket: the function carries
    /// constant-factor terms that the coefficient side does not see
    /// (for a constant the coefficient side vanishes outright).
    DcCaveat,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    #[serde(serialize_with = "serialize_metrics")]
    pub metrics: BTreeMap<String, f64>,
}

fn serialize_metrics<S: Serializer>(
    metrics: &BTreeMap<String, f64>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = serializer.serialize_map(Some(metrics.len()))?;
    for (k, v) in metrics {
        map.serialize_entry(k, &ExtReal(*v))?;
    }
    map.end()
}

struct ExtReal(f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        crate::json::serialize_ext_real(&self.0, serializer)
    }
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            outcome: if passed { Outcome::Pass } else { Outcome::Fail },
            metrics: BTreeMap::new(),
        }
    }

    pub fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub meta: serde_json::Value,
    pub records: Vec<RatioRecord>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(meta: serde_json::Value, records: Vec<RatioRecord>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(Check::passed);
        Self {
            meta,
            records,
            checks,
            pass,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_string_sorted(self).expect("report values serialize")
    }
}
