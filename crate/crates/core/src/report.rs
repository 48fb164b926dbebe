//! Serialized forms of verification records and sweep summaries.
//!
//! Identity values can exceed any fixed-width integer, so `lhs`, `rhs` and
//! `residual` are always rendered as exact decimal strings — JSON numbers are
//! never used for them. Field order is fixed: `schema_version`, `identity`,
//! `params` (in canonical `j, k, m, n, i` order), `lhs`, `rhs`, `residual`,
//! `holds`, `in_domain`; the JSONL and CSV renderings of the same record
//! contain identical values field for field.

use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::identities::VerificationRecord;
use crate::sweep::{ConstraintMode, SweepReport};

/// Version tag stamped on every serialized record.
pub const SCHEMA_VERSION: &str = "1";

/// The flat, serialization-ready form of a [`VerificationRecord`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub identity: &'static str,
    pub params: Vec<(&'static str, u64)>,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub holds: bool,
    pub in_domain: bool,
}

impl OutputRecord {
    pub fn from_record(record: &VerificationRecord) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            identity: record.identity.name(),
            params: record.params.named(),
            lhs: record.lhs.to_decimal(),
            rhs: record.rhs.to_decimal(),
            residual: record.residual.to_decimal(),
            holds: record.holds,
            in_domain: record.in_domain,
        }
    }

    /// One JSON object, no trailing newline.
    pub fn to_jsonl(&self) -> String {
        let mut params = Map::new();
        for (name, value) in &self.params {
            params.insert((*name).to_string(), Value::from(*value));
        }
        let mut object = Map::new();
        object.insert("schema_version".into(), Value::from(self.schema_version));
        object.insert("identity".into(), Value::from(self.identity));
        object.insert("params".into(), Value::Object(params));
        object.insert("lhs".into(), Value::from(self.lhs.clone()));
        object.insert("rhs".into(), Value::from(self.rhs.clone()));
        object.insert("residual".into(), Value::from(self.residual.clone()));
        object.insert("holds".into(), Value::from(self.holds));
        object.insert("in_domain".into(), Value::from(self.in_domain));
        Value::Object(object).to_string()
    }

    /// Column names for the CSV rendering of records with this arity.
    pub fn csv_header(&self) -> Vec<String> {
        let mut columns = vec!["schema_version".to_string(), "identity".to_string()];
        columns.extend(self.params.iter().map(|(name, _)| (*name).to_string()));
        columns.extend(
            ["lhs", "rhs", "residual", "holds", "in_domain"]
                .iter()
                .map(|c| c.to_string()),
        );
        columns
    }

    /// Row values, aligned with [`Self::csv_header`].
    pub fn csv_fields(&self) -> Vec<String> {
        let mut fields = vec![self.schema_version.to_string(), self.identity.to_string()];
        fields.extend(self.params.iter().map(|(_, value)| value.to_string()));
        fields.push(self.lhs.clone());
        fields.push(self.rhs.clone());
        fields.push(self.residual.clone());
        fields.push(self.holds.to_string());
        fields.push(self.in_domain.to_string());
        fields
    }
}

/// Streams records as JSONL (UTF-8, LF line endings).
pub struct JsonlWriter<W: Write> {
    out: W,
}

impl<W: Write> JsonlWriter<W> {
    pub fn new(out: W) -> Self {
        JsonlWriter { out }
    }

    pub fn write(&mut self, record: &VerificationRecord) -> io::Result<()> {
        let line = OutputRecord::from_record(record).to_jsonl();
        self.out.write_all(line.as_bytes())?;
        self.out.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Streams records as CSV with RFC-4180-style quoting; the header row is
/// emitted with the first record (a sweep holds one identity, so one arity).
pub struct CsvWriter<W: Write> {
    inner: csv::Writer<W>,
    wrote_header: bool,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(out: W) -> Self {
        CsvWriter { inner: csv::Writer::from_writer(out), wrote_header: false }
    }

    pub fn write(&mut self, record: &VerificationRecord) -> io::Result<()> {
        let flat = OutputRecord::from_record(record);
        if !self.wrote_header {
            self.inner.write_record(flat.csv_header())?;
            self.wrote_header = true;
        }
        self.inner.write_record(flat.csv_fields())?;
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Human-readable sweep summary.
pub fn render_summary(report: &SweepReport) -> String {
    let mode = match report.spec.mode {
        ConstraintMode::InDomainOnly => "in-domain-only",
        ConstraintMode::IncludeBoundary => "include-boundary",
    };
    let mut out = String::new();
    out.push_str(&format!("identity:           {}\n", report.spec.identity));
    out.push_str(&format!("mode:               {mode}\n"));
    out.push_str(&format!("workers:            {}\n", report.spec.workers));
    out.push_str(&format!("points evaluated:   {}\n", report.points_evaluated));
    out.push_str(&format!("in-domain failures: {}\n", report.failures.len()));
    if report.spec.mode == ConstraintMode::IncludeBoundary {
        out.push_str(&format!(
            "boundary failures:  {}\n",
            report.boundary_failures.len()
        ));
    }
    out.push_str(&format!(
        "wall time:          {:.3}s\n",
        report.wall_time.as_secs_f64()
    ));
    out
}
