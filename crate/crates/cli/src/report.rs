//! Verification reports and their three output formats.
//!
//! Output is a pure function of the report: fields come out in a fixed
//! order, reals as `{:.16e}` (17 significant digits), every line ends in a
//! newline, and nothing time-dependent is recorded.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    List(Vec<Value>),
    Null,
}

pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Real(x) => fmt_real(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
            Value::List(v) => format!("[{}]", v.iter().map(Value::render).collect::<Vec<_>>().join(", ")),
            Value::Null => "-".into(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Real(x) if x.is_finite() => {
                let raw = RawValue::from_string(fmt_real(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Value::Real(x) => s.serialize_str(&fmt_real(*x)),
            Value::Int(i) => s.serialize_i64(*i),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Text(t) => s.serialize_str(t),
            Value::List(v) => v.serialize(s),
            Value::Null => s.serialize_unit(),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(x: Vec<T>) -> Self {
        Value::List(x.into_iter().map(Into::into).collect())
    }
}

/// Key-value pairs serialized as a JSON object in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fields(pub Vec<(String, Value)>);

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

/// One row of an index sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: String,
    pub domain_lo: f64,
    pub domain_hi: f64,
    pub r: f64,
    pub t: f64,
    pub n0: Option<usize>,
    pub verdict: String,
    /// Closed-form index, power family only.
    pub closed_form_k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub outcome: Outcome,
    pub seed: u64,
    pub plan: String,
    pub fields: Fields,
    #[serde(skip)]
    pub sweep: Option<SweepRow>,
}

impl Record {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, outcome: Outcome, seed: u64, plan: impl Into<String>) -> Self {
        Record {
            name: name.into(),
            anchor: anchor.into(),
            outcome,
            seed,
            plan: plan.into(),
            fields: Fields::default(),
            sweep: None,
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.0.push((key.to_string(), value.into()));
        self
    }

    pub fn with_sweep(mut self, row: SweepRow) -> Self {
        self.sweep = Some(row);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

/// Pass when `ok`, fail otherwise.
pub fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub scenario: String,
    pub kind: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Report {
    pub fn new(scenario: impl Into<String>, kind: impl Into<String>, seed: u64) -> Self {
        Report {
            scenario: scenario.into(),
            kind: kind.into(),
            seed,
            records: Vec::new(),
        }
    }

    pub fn summary(&self) -> Summary {
        let count = |o| self.records.iter().filter(|r| r.outcome == o).count();
        Summary {
            records: self.records.len(),
            pass: count(Outcome::Pass),
            fail: count(Outcome::Fail),
            inconclusive: count(Outcome::Inconclusive),
        }
    }

    /// Whether the run counts as failed; inconclusive records count as
    /// failures only when `strict_inconclusive` is set.
    pub fn failed(&self, strict_inconclusive: bool) -> bool {
        let s = self.summary();
        s.fail > 0 || (strict_inconclusive && s.inconclusive > 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    JsonLines,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::JsonLines => "jsonl",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

pub fn emit(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::JsonLines => emit_json_lines(report),
        Format::Csv => emit_csv(report),
        Format::Text => Ok(emit_text(report)),
    }
}

#[derive(Serialize)]
struct Header<'a> {
    #[serde(rename = "type")]
    kind_tag: &'static str,
    scenario: &'a str,
    kind: &'a str,
    seed: u64,
    version: &'static str,
}

#[derive(Serialize)]
struct Line<'a, T: Serialize> {
    #[serde(rename = "type")]
    kind_tag: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

/// Header line, one line per record, summary line.
pub fn emit_json_lines(report: &Report) -> Result<String, String> {
    let mut out = String::new();
    let mut push = |v: String| {
        out.push_str(&v);
        out.push('\n');
    };
    let header = Header {
        kind_tag: "scenario",
        scenario: &report.scenario,
        kind: &report.kind,
        seed: report.seed,
        version: env!("CARGO_PKG_VERSION"),
    };
    push(serde_json::to_string(&header).map_err(|e| e.to_string())?);
    for r in &report.records {
        let line = Line {
            kind_tag: "record",
            body: r,
        };
        push(serde_json::to_string(&line).map_err(|e| e.to_string())?);
    }
    let summary = Line {
        kind_tag: "summary",
        body: &report.summary(),
    };
    push(serde_json::to_string(&summary).map_err(|e| e.to_string())?);
    Ok(out)
}

pub const SWEEP_COLUMNS: [&str; 8] = ["family", "domain_lo", "domain_hi", "r", "t", "n0", "verdict", "paper_k"];

/// Index-sweep rows when the report has any, otherwise one row per record
/// with `name,anchor,outcome,seed,plan`.
pub fn emit_csv(report: &Report) -> Result<String, String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let err = |e: csv::Error| e.to_string();
    let rows: Vec<&SweepRow> = report.records.iter().filter_map(|r| r.sweep.as_ref()).collect();
    if rows.is_empty() {
        w.write_record(["name", "anchor", "outcome", "seed", "plan"]).map_err(err)?;
        for r in &report.records {
            w.write_record([&r.name, &r.anchor, r.outcome.name(), &r.seed.to_string(), &r.plan])
                .map_err(err)?;
        }
    } else {
        w.write_record(SWEEP_COLUMNS).map_err(err)?;
        let opt = |v: Option<usize>| v.map_or(String::new(), |n| n.to_string());
        for s in rows {
            w.write_record([
                s.family.clone(),
                fmt_real(s.domain_lo),
                fmt_real(s.domain_hi),
                fmt_real(s.r),
                fmt_real(s.t),
                opt(s.n0),
                s.verdict.clone(),
                opt(s.closed_form_k),
            ])
            .map_err(err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

pub fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario {} ({}), seed {}", report.scenario, report.kind, report.seed);
    for r in &report.records {
        let _ = writeln!(out, "[{}] {}", r.outcome.name().to_uppercase(), r.name);
        let _ = writeln!(out, "    anchor: {}", r.anchor);
        let _ = writeln!(out, "    plan: {}", r.plan);
        for (k, v) in &r.fields.0 {
            let _ = writeln!(out, "    {k}: {}", v.render());
        }
    }
    let s = report.summary();
    let _ = writeln!(
        out,
        "{} records: {} pass, {} fail, {} inconclusive",
        s.records, s.pass, s.fail, s.inconclusive
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut rep = Report::new("demo", "catalog", 7);
        rep.records.push(
            Record::new("check a", "anchor a", Outcome::Pass, 7, "plan")
                .field("x", 0.1)
                .field("n0", Some(90usize))
                .field("missing", None::<usize>)
                .field("list", vec![1.0, 2.0]),
        );
        rep.records.push(Record::new("check, b", "anchor b", Outcome::Inconclusive, 7, "plan"));
        rep
    }

    #[test]
    fn json_lines_shape() {
        let s = emit_json_lines(&sample()).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(s.ends_with('\n'));
        assert_eq!(
            lines[1],
            r#"{"type":"record","name":"check a","anchor":"anchor a","outcome":"pass","seed":7,"plan":"plan","fields":{"x":1.0000000000000001e-1,"n0":90,"missing":null,"list":[1.0000000000000000e0,2.0000000000000000e0]}}"#
        );
        for l in &lines {
            serde_json::from_str::<serde_json::Value>(l).unwrap();
        }
        assert!(lines[3].contains(r#""pass":1,"fail":0,"inconclusive":1"#));
    }

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e10] {
            assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(Value::Real(f64::INFINITY).render(), "inf");
    }

    #[test]
    fn csv_falls_back_to_records() {
        let s = emit_csv(&sample()).unwrap();
        assert_eq!(s.lines().next().unwrap(), "name,anchor,outcome,seed,plan");
        assert!(s.contains("\"check, b\""));
    }

    #[test]
    fn failure_policy() {
        let rep = sample();
        assert!(!rep.failed(false));
        assert!(rep.failed(true));
        assert!(emit_text(&rep).contains("anchor: anchor a"));
    }
}
