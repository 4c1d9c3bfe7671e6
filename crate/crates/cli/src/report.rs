//! Report rows and their JSONL / CSV encodings.

use std::fmt;
use std::io::Write;

use condcolor::oracles::{Match, Prediction};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// χ_r, or the marker for a solve that ran out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiValue {
    Value(usize),
    Timeout,
}

impl fmt::Display for ChiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiValue::Value(v) => write!(f, "{v}"),
            ChiValue::Timeout => f.write_str("timeout"),
        }
    }
}

impl Serialize for ChiValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ChiValue::Value(v) => s.serialize_u64(*v as u64),
            ChiValue::Timeout => s.serialize_str("timeout"),
        }
    }
}

impl<'de> Deserialize<'de> for ChiValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ChiVisitor;
        impl Visitor<'_> for ChiVisitor {
            type Value = ChiValue;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"timeout\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ChiValue, E> {
                Ok(ChiValue::Value(v as usize))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ChiValue, E> {
                match v {
                    "timeout" => Ok(ChiValue::Timeout),
                    other => other
                        .parse()
                        .map(ChiValue::Value)
                        .map_err(|_| E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }
        d.deserialize_any(ChiVisitor)
    }
}

/// One solver run, optionally compared against a closed-form prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub chi_r: ChiValue,
    pub lower_bound: usize,
    pub unique: Option<bool>,
    /// Distinct optimal partitions found (enumeration stops at 2).
    pub partitions: Option<usize>,
    pub prediction: Option<Prediction>,
    #[serde(rename = "match")]
    pub outcome: Option<Match>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    pub note: Option<String>,
}

impl Report {
    pub fn timed_out(&self) -> bool {
        self.chi_r == ChiValue::Timeout
    }
}

/// Flat CSV projection of a [`Report`]; the prediction is spread over
/// `prediction_*` columns and its preconditions are kept as a JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub chi_r: String,
    pub lower_bound: usize,
    pub unique: Option<bool>,
    pub partitions: Option<usize>,
    pub prediction_source: Option<String>,
    pub prediction_kind: Option<String>,
    pub prediction_value: Option<String>,
    pub prediction_applicable: Option<bool>,
    pub prediction_preconditions: Option<String>,
    pub prediction_note: Option<String>,
    #[serde(rename = "match")]
    pub outcome: Option<String>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    pub note: Option<String>,
}

fn enum_text<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("enum serializes") {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

impl From<&Report> for CsvRow {
    fn from(r: &Report) -> Self {
        let p = r.prediction.as_ref();
        CsvRow {
            instance: r.instance.clone(),
            n: r.n,
            m: r.m,
            r: r.r,
            chi_r: r.chi_r.to_string(),
            lower_bound: r.lower_bound,
            unique: r.unique,
            partitions: r.partitions,
            prediction_source: p.map(|p| p.source.to_string()),
            prediction_kind: p.map(|p| enum_text(&p.kind)),
            prediction_value: p.and_then(|p| p.value).map(|v| v.to_string()),
            prediction_applicable: p.map(|p| p.applicable),
            prediction_preconditions: p.map(|p| serde_json::to_string(&p.preconditions).unwrap()),
            prediction_note: p.and_then(|p| p.note.clone()),
            outcome: r.outcome.as_ref().map(enum_text),
            nodes_explored: r.nodes_explored,
            elapsed_ms: r.elapsed_ms,
            seed: r.seed,
            note: r.note.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Serializes reports through a single writer.
pub fn write_reports<W: Write>(out: W, format: Format, reports: &[Report]) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for report in reports {
                serde_json::to_writer(&mut out, report)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for report in reports {
                writer.serialize(CsvRow::from(report))?;
            }
            if reports.is_empty() {
                writer.write_record(csv_header())?;
            }
            writer.flush()?;
        }
    }
    Ok(())
}

fn csv_header() -> [&'static str; 19] {
    [
        "instance",
        "n",
        "m",
        "r",
        "chi_r",
        "lower_bound",
        "unique",
        "partitions",
        "prediction_source",
        "prediction_kind",
        "prediction_value",
        "prediction_applicable",
        "prediction_preconditions",
        "prediction_note",
        "match",
        "nodes_explored",
        "elapsed_ms",
        "seed",
        "note",
    ]
}
