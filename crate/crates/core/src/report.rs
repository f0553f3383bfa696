//! Check records shared by every verification suite.
//!
//! Each record renders as one `key=value` line:
//! `suite=<s> check=<c> status=<pass|fail|inconclusive> witness=<w> detail=<d>`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

impl Record {
    pub fn new(suite: &str, check: impl Into<String>, status: Status) -> Self {
        Self { suite: suite.into(), check: check.into(), status, witness: None, detail: None }
    }

    pub fn pass(suite: &str, check: impl Into<String>) -> Self {
        Self::new(suite, check, Status::Pass)
    }

    pub fn fail(suite: &str, check: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(suite, check, Status::Fail).with_witness(witness)
    }

    /// Pass when `ok`, otherwise fail with the given witness.
    pub fn check(suite: &str, check: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(suite, check)
        } else {
            Self::fail(suite, check, witness())
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Values are written without spaces so lines split cleanly on whitespace.
fn sanitize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join("_")
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite={} check={} status={} witness={}",
            sanitize(&self.suite),
            sanitize(&self.check),
            self.status,
            self.witness.as_deref().map_or("-".into(), sanitize)
        )?;
        if let Some(d) = &self.detail {
            write!(f, " detail={}", sanitize(d))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn find(&self, check: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check == check)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
