//! Verification records and the text/JSON report writer.
//!
//! Reports are byte-for-byte reproducible: wall time is kept on the record
//! for callers that want it but never written out.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Duration;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    OracleFailed,
    ConstraintViolation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
            Status::OracleFailed => "ORACLE_FAILED",
            Status::ConstraintViolation => "CONSTRAINT_VIOLATION",
        }
    }

    /// Counted as `skipped` in the summary line.
    pub fn is_skipped(self) -> bool {
        matches!(self, Status::NotApplicable | Status::ConstraintViolation)
    }

    /// Makes the process exit non-zero.
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::OracleFailed)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Parameter bindings in the entry's declared order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(pub Vec<(String, f64)>);

impl Params {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub entry: String,
    pub params: Params,
    /// Closed-form value.
    pub expected: Option<f64>,
    /// Oracle value.
    pub numeric: Option<f64>,
    pub abs_err: Option<f64>,
    pub oracle_error: Option<f64>,
    pub status: Status,
    pub wall_time: Duration,
    /// Free-form explanation: violated constraint, oracle diagnostic, limit source.
    pub note: Option<String>,
}

impl VerificationRecord {
    pub fn new(entry: impl Into<String>, params: Params, status: Status) -> Self {
        VerificationRecord {
            entry: entry.into(),
            params,
            expected: None,
            numeric: None,
            abs_err: None,
            oracle_error: None,
            status,
            wall_time: Duration::ZERO,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// One report line, without a trailing newline.
    pub fn text_line(&self) -> String {
        format!(
            "entry={} params={} expected={} numeric={} abs_err={} status={}",
            self.entry,
            self.params,
            format_g17(self.expected.unwrap_or(f64::NAN)),
            format_g17(self.numeric.unwrap_or(f64::NAN)),
            format_e3(self.abs_err.unwrap_or(f64::NAN)),
            self.status
        )
    }
}

impl Serialize for VerificationRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // the same fields as a text line; serde_json writes non-finite as null
        let mut st = s.serialize_struct("VerificationRecord", 6)?;
        st.serialize_field("entry", &self.entry)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("expected", &self.expected)?;
        st.serialize_field("numeric", &self.numeric)?;
        st.serialize_field("abs_err", &self.abs_err)?;
        st.serialize_field("status", &self.status)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    /// `fail` counts both FAIL and ORACLE_FAILED.
    pub fn of(records: &[VerificationRecord]) -> Summary {
        let mut s = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in records {
            if r.status == Status::Pass {
                s.pass += 1;
            } else if r.status.is_skipped() {
                s.skipped += 1;
            } else {
                s.fail += 1;
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total={} pass={} fail={} skipped={}",
            self.total, self.pass, self.fail, self.skipped
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

/// Writes `records` in the given format. Text ends with the summary line;
/// JSON is a single array.
pub fn emit_report<W: Write + ?Sized>(records: &[VerificationRecord], format: Format, sink: &mut W) -> io::Result<()> {
    match format {
        Format::Text => {
            for r in records {
                writeln!(sink, "{}", r.text_line())?;
            }
            writeln!(sink, "{}", Summary::of(records))
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *sink, records).map_err(io::Error::from)?;
            writeln!(sink)
        }
    }
}

/// C's `%.17g`: 17 significant digits, trailing zeros trimmed, exponent form
/// outside `1e-4 ..= 1e17`.
pub fn format_g17(v: f64) -> String {
    format_g(v, 17)
}

fn format_g(v: f64, precision: usize) -> String {
    if let Some(s) = non_finite(v) {
        return s;
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", precision - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= precision as i32 {
        format!("{}{}", trim_zeros(mantissa), c_exponent(exp))
    } else {
        let decimals = (precision as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_owned()
    }
}

/// C's `%.3e`.
pub fn format_e3(v: f64) -> String {
    if let Some(s) = non_finite(v) {
        return s;
    }
    let sci = format!("{:.3e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    format!("{mantissa}{}", c_exponent(exp.parse().expect("integer exponent")))
}

fn non_finite(v: f64) -> Option<String> {
    if v.is_nan() {
        Some("nan".into())
    } else if v.is_infinite() {
        Some(if v > 0.0 { "inf".into() } else { "-inf".into() })
    } else {
        None
    }
}

fn c_exponent(exp: i32) -> String {
    let sign = if exp < 0 { '-' } else { '+' };
    format!("e{sign}{:02}", exp.abs())
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
