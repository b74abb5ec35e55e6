//! Line-delimited report records.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Refused,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Refused => "REFUSED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Path of the evidence file, relative to the output directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
    #[serde(default)]
    pub wall_ms: u64,
}

impl Record {
    pub fn new(check: &str, verdict: Verdict) -> Self {
        Record { check: check.into(), params: BTreeMap::new(), verdict, detail: None, evidence: None, wall_ms: 0 }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn evidence(mut self, path: impl Into<String>) -> Self {
        self.evidence = Some(path.into());
        self
    }

    pub fn pass_if(check: &str, ok: bool) -> Self {
        Record::new(check, if ok { Verdict::Pass } else { Verdict::Fail })
    }
}

/// 0 when every record passes, 1 on any failure, 2 otherwise.
pub fn exit_code<'a>(records: impl IntoIterator<Item = &'a Record>) -> i32 {
    let mut code = 0;
    for r in records {
        match r.verdict {
            Verdict::Fail => return 1,
            Verdict::Inconclusive | Verdict::Refused => code = 2,
            Verdict::Pass => {}
        }
    }
    code
}

pub fn write_records(w: &mut impl Write, records: &[Record]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_records(r: impl BufRead) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| anyhow::anyhow!("record line {}: {e}", i + 1))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_exit_codes() {
        let recs = vec![
            Record::new("a", Verdict::Pass).param("n", 2).wall(3),
            Record::new("b", Verdict::Inconclusive).detail("stuck"),
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("{\"check\":\"a\",\"params\":{\"n\":\"2\"},\"verdict\":\"PASS\""));
        assert_eq!(read_records(&buf[..]).unwrap(), recs);
        assert_eq!(exit_code(&recs), 2);
        assert_eq!(exit_code(&recs[..1]), 0);
        assert_eq!(exit_code(&[Record::new("c", Verdict::Fail), recs[1].clone()]), 1);
        assert_eq!(exit_code(&[]), 0);
    }

    impl Record {
        fn wall(mut self, ms: u64) -> Self {
            self.wall_ms = ms;
            self
        }
    }
}
