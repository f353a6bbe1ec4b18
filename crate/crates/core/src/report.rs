//! Machine-readable check outcomes and their serialized forms.
//!
//! Output is bit-stable: object keys are sorted and every float is printed
//! with 17 significant digits, which round-trips exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// How `computed` is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|computed - expected| <= tolerance`
    Equal,
    /// `computed <= bound + tolerance * |bound|`
    AtMost,
    /// `computed >= bound - tolerance * |bound|`
    AtLeast,
}

/// Outcome of one verified claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim_id: String,
    pub inputs: BTreeMap<String, Value>,
    pub computed: f64,
    pub expected: Option<f64>,
    pub bound: Option<f64>,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub status: Status,
    pub citation: String,
    pub seed: Option<u64>,
}

impl CheckReport {
    fn base(
        claim_id: &str,
        citation: &str,
        computed: f64,
        comparison: Comparison,
        tolerance: f64,
    ) -> Self {
        Self {
            claim_id: claim_id.to_owned(),
            inputs: BTreeMap::new(),
            computed,
            expected: None,
            bound: None,
            comparison,
            tolerance,
            status: Status::Fail,
            citation: citation.to_owned(),
            seed: None,
        }
    }

    pub fn equal(
        claim_id: &str,
        citation: &str,
        computed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let mut r = Self::base(claim_id, citation, computed, Comparison::Equal, tolerance);
        r.expected = Some(expected);
        r.status = pass_if((computed - expected).abs() <= tolerance);
        r
    }

    pub fn at_most(claim_id: &str, citation: &str, computed: f64, bound: f64, slack: f64) -> Self {
        let mut r = Self::base(claim_id, citation, computed, Comparison::AtMost, slack);
        r.bound = Some(bound);
        r.status = pass_if(computed <= bound + slack * bound.abs());
        r
    }

    pub fn at_least(claim_id: &str, citation: &str, computed: f64, bound: f64, slack: f64) -> Self {
        let mut r = Self::base(claim_id, citation, computed, Comparison::AtLeast, slack);
        r.bound = Some(bound);
        r.status = pass_if(computed >= bound - slack * bound.abs());
        r
    }

    /// A yes/no claim: computed is 1 when it holds, 0 otherwise.
    pub fn holds(claim_id: &str, citation: &str, holds: bool) -> Self {
        Self::equal(claim_id, citation, if holds { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    pub fn skipped(claim_id: &str, citation: &str, reason: &str) -> Self {
        let mut r = Self::base(claim_id, citation, 0.0, Comparison::Equal, 0.0);
        r.status = Status::Skipped;
        r.inputs.insert("reason".into(), Value::from(reason));
        r
    }

    /// Marks the report failed with a reason, e.g. when the computation
    /// itself errored.
    pub fn failed(claim_id: &str, citation: &str, reason: &str) -> Self {
        let mut r = Self::base(claim_id, citation, 0.0, Comparison::Equal, 0.0);
        r.inputs.insert("error".into(), Value::from(reason));
        r
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Requires an extra condition on top of the numeric comparison.
    pub fn also_require(mut self, condition: bool, note: &str) -> Self {
        if !condition && self.status == Status::Pass {
            self.status = Status::Fail;
            self.inputs
                .insert("failed_condition".into(), Value::from(note));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The reference value shown in tables: the bound for one-sided
    /// claims, the expected value otherwise.
    pub fn reference(&self) -> Option<f64> {
        self.bound.or(self.expected)
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Output formats for report lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

/// Formats a float with 17 significant digits; non-finite values map to
/// `null`.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_owned()
    }
}

/// Writes a JSON value with sorted keys, two-space indentation and fixed
/// float formatting.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // Scalar arrays stay on one line.
            let nested = items.iter().any(|v| v.is_object() || v.is_array());
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if nested {
                    newline(out, depth + 1);
                }
                write_value(out, item, depth + 1);
            }
            if nested {
                newline(out, depth);
            }
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                newline(out, depth + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[key], depth + 1);
            }
            newline(out, depth);
            out.push('}');
        }
    }
}

fn newline(out: &mut String, depth: usize) {
    out.push('\n');
    for _ in 0..depth {
        out.push_str("  ");
    }
}

/// Serializes any value through [`canonical_json`].
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(canonical_json(&serde_json::to_value(value)?))
}

pub const CSV_HEADER: [&str; 7] = [
    "claim_id",
    "status",
    "computed",
    "bound",
    "tolerance",
    "citation",
    "seed",
];

/// Renders reports in the requested format.
pub fn render(reports: &[CheckReport], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut text = to_canonical_json(&reports)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(CSV_HEADER)?;
            for r in reports {
                writer.write_record([
                    r.claim_id.clone(),
                    r.status.to_string(),
                    format_float(r.computed),
                    r.reference().map(format_float).unwrap_or_default(),
                    format_float(r.tolerance),
                    r.citation.clone(),
                    r.seed.map(|s| s.to_string()).unwrap_or_default(),
                ])?;
            }
            let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Markdown => {
            let mut text = String::from(
                "| claim_id | status | computed | bound | tolerance | citation |\n\
                 |---|---|---|---|---|---|\n",
            );
            for r in reports {
                text.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.claim_id,
                    r.status,
                    format_float(r.computed),
                    r.reference()
                        .map(format_float)
                        .unwrap_or_else(|| "-".into()),
                    format_float(r.tolerance),
                    r.citation.replace('|', "\\|"),
                ));
            }
            Ok(text)
        }
    }
}

/// Writes rendered reports to `path`, or to stdout when `path` is `None`.
pub fn emit(reports: &[CheckReport], format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(reports, format)?;
    match path {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses the JSON produced by [`render`].
pub fn parse_json(text: &str) -> Result<Vec<CheckReport>> {
    Ok(serde_json::from_str(text)?)
}

/// True iff no non-skipped report failed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}
