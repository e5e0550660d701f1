use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One computed quantity. When `bound` is present the check requires
/// `value ≤ bound`; entries without a bound are diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Computed {
    pub label: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    /// SHA-256 (hex) of the canonical JSON of the check inputs.
    pub inputs_digest: String,
    pub computed: Vec<Computed>,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: u64,
    pub metadata: BTreeMap<String, String>,
}

/// Hex SHA-256 of the compact JSON encoding of `inputs`.
///
/// `serde_json` objects keep their keys sorted, so equal inputs give equal digests.
pub fn digest(inputs: &serde_json::Value) -> String {
    let bytes = serde_json::to_vec(inputs).expect("JSON values always serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Accumulates entries and metadata, then seals them into a report.
#[derive(Debug)]
pub struct ReportBuilder {
    check_id: String,
    tolerance: f64,
    inputs: serde_json::Value,
    computed: Vec<Computed>,
    metadata: BTreeMap<String, String>,
}

impl ReportBuilder {
    pub fn new(check_id: &str, tolerance: f64, inputs: serde_json::Value) -> Self {
        Self {
            check_id: check_id.to_string(),
            tolerance,
            inputs,
            computed: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    /// A discrepancy that must not exceed the headline tolerance.
    pub fn discrepancy(&mut self, label: &str, value: f64) -> &mut Self {
        let bound = self.tolerance;
        self.bounded(label, value, bound)
    }

    pub fn bounded(&mut self, label: &str, value: f64, bound: f64) -> &mut Self {
        self.computed.push(Computed {
            label: label.to_string(),
            value,
            bound: Some(bound),
        });
        self
    }

    pub fn info(&mut self, label: &str, value: f64) -> &mut Self {
        self.computed.push(Computed {
            label: label.to_string(),
            value,
            bound: None,
        });
        self
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Record a failure that prevented a quantity from being computed.
    pub fn error(&mut self, label: &str, err: impl std::fmt::Display) -> &mut Self {
        self.metadata.insert(format!("error.{label}"), err.to_string());
        self.computed.push(Computed {
            label: label.to_string(),
            value: f64::INFINITY,
            bound: Some(self.tolerance),
        });
        self
    }

    pub fn finish(self) -> VerificationReport {
        // NaN fails `≤`, as it should
        let passed = !self.computed.is_empty()
            && self
                .computed
                .iter()
                .all(|c| c.bound.is_none_or(|b| c.value <= b));
        VerificationReport {
            check_id: self.check_id,
            inputs_digest: digest(&self.inputs),
            computed: self.computed,
            tolerance: self.tolerance,
            passed,
            runtime_ms: 0,
            metadata: self.metadata,
        }
    }
}

impl VerificationReport {
    /// The bounded entry closest to (or furthest past) its bound, as `value / bound`.
    pub fn worst(&self) -> Option<&Computed> {
        self.computed
            .iter()
            .filter(|c| c.bound.is_some())
            .max_by(|a, b| margin(a).total_cmp(&margin(b)))
    }

    /// `check_id PASS|FAIL label=value (bound)` for the worst entry.
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        match self.worst() {
            Some(c) => format!(
                "{} {} {}={} (bound {})",
                self.check_id,
                status,
                c.label,
                fmt_f64(c.value),
                fmt_f64(c.bound.unwrap_or(f64::NAN))
            ),
            None => format!("{} {}", self.check_id, status),
        }
    }
}

fn margin(c: &Computed) -> f64 {
    match c.bound {
        Some(b) => c.value - b,
        None => f64::NEG_INFINITY,
    }
}

/// Shortest decimal that round-trips, with an exponent for very large or small magnitudes.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_json<W: Write>(out: W, reports: &[VerificationReport]) -> serde_json::Result<()> {
    let mut out = out;
    if let [single] = reports {
        serde_json::to_writer_pretty(&mut out, single)?;
    } else {
        serde_json::to_writer_pretty(&mut out, reports)?;
    }
    out.write_all(b"\n").map_err(serde_json::Error::io)
}

/// One row per computed entry: `check_id,label,value,bound,tolerance,passed,inputs_digest`.
pub fn write_csv<W: Write>(out: W, reports: &[VerificationReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["check_id", "label", "value", "bound", "tolerance", "passed", "inputs_digest"])?;
    for r in reports {
        for c in &r.computed {
            w.write_record([
                r.check_id.as_str(),
                c.label.as_str(),
                &fmt_f64(c.value),
                &c.bound.map(fmt_f64).unwrap_or_default(),
                &fmt_f64(r.tolerance),
                if r.passed { "true" } else { "false" },
                r.inputs_digest.as_str(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
