//! JSON-lines and CSV report writing with a trailing summary line.

use std::io::Write;
use std::time::Instant;

use qspectra_core::Verdict;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
    Skipped,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Status {
        match v {
            Verdict::True => Status::Pass,
            Verdict::False => Status::Fail,
            Verdict::Undecided => Status::Undecided,
        }
    }
}

impl From<bool> for Status {
    fn from(b: bool) -> Status {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl Status {
    /// Swaps pass and fail; used by the negated self-test.
    pub fn negate(self) -> Status {
        match self {
            Status::Pass => Status::Fail,
            Status::Fail => Status::Pass,
            s => s,
        }
    }
}

/// One report line: a verdict plus the item's fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub status: Status,
    pub fields: Map<String, Value>,
}

impl Row {
    /// `item` must serialize to a JSON object.
    pub fn new(status: impl Into<Status>, item: impl Serialize) -> Row {
        let fields = match serde_json::to_value(item).expect("report items serialize") {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Row {
            status: status.into(),
            fields,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.fields.clone();
        m.insert("verdict".into(), serde_json::to_value(self.status).expect("status"));
        Value::Object(m)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    pub skipped: usize,
}

impl Summary {
    fn count(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Undecided => self.undecided += 1,
            Status::Skipped => self.skipped += 1,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.undecided > 0 {
            3
        } else {
            0
        }
    }
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    parameters: &'a Value,
    summary: Summary,
    wall_time_s: f64,
}

/// Streams rows as they are produced and closes with the summary.
pub struct Reporter<W: Write> {
    out: W,
    format: Format,
    command: String,
    parameters: Value,
    summary: Summary,
    started: Instant,
    csv_header: Option<Vec<String>>,
}

impl<W: Write> Reporter<W> {
    pub fn new(out: W, format: Format, command: &str, parameters: Value) -> Reporter<W> {
        Reporter {
            out,
            format,
            command: command.to_string(),
            parameters,
            summary: Summary::default(),
            started: Instant::now(),
            csv_header: None,
        }
    }

    pub fn summary(&self) -> Summary {
        self.summary
    }

    pub fn emit(&mut self, row: Row) -> std::io::Result<()> {
        self.summary.count(row.status);
        let value = row.to_json();
        match self.format {
            Format::Json => writeln!(self.out, "{value}")?,
            Format::Csv => self.write_csv(&value)?,
        }
        self.out.flush()
    }

    pub fn emit_all(&mut self, rows: impl IntoIterator<Item = Row>) -> std::io::Result<()> {
        rows.into_iter().try_for_each(|r| self.emit(r))
    }

    /// Writes the summary line and returns the exit code.
    pub fn finish(mut self) -> std::io::Result<i32> {
        let report = RunReport {
            command: &self.command,
            parameters: &self.parameters,
            summary: self.summary,
            wall_time_s: self.started.elapsed().as_secs_f64(),
        };
        let value = serde_json::to_value(&report).expect("summary serializes");
        match self.format {
            Format::Json => writeln!(self.out, "{value}")?,
            Format::Csv => {
                let Value::Object(mut m) = value else { unreachable!() };
                let Some(Value::Object(s)) = m.remove("summary") else { unreachable!() };
                m.extend(s);
                m.insert("verdict".into(), Value::String("SUMMARY".into()));
                self.write_csv(&Value::Object(m))?;
            }
        }
        self.out.flush()?;
        Ok(self.summary.exit_code())
    }

    /// Columns follow the row's keys; a new header is written whenever they
    /// change. Nested values are embedded as compact JSON.
    fn write_csv(&mut self, value: &Value) -> std::io::Result<()> {
        let Value::Object(m) = value else { unreachable!("rows are objects") };
        let mut keys: Vec<String> = vec!["verdict".into()];
        keys.extend(m.keys().filter(|k| *k != "verdict").cloned());
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        if self.csv_header.as_ref() != Some(&keys) {
            w.write_record(&keys)?;
            self.csv_header = Some(keys.clone());
        }
        let cells: Vec<String> = keys
            .iter()
            .map(|k| match &m[k] {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            })
            .collect();
        w.write_record(&cells)?;
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        self.out.write_all(&bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn run(format: Format, rows: Vec<Row>) -> (String, i32) {
        let mut buf = Vec::new();
        let mut r = Reporter::new(&mut buf, format, "test", json!({"x": 1}));
        r.emit_all(rows).unwrap();
        let code = r.finish().unwrap();
        (String::from_utf8(buf).unwrap(), code)
    }

    #[test]
    fn summary_counts_lines() {
        let rows = vec![
            Row::new(true, json!({"a": 1})),
            Row::new(Verdict::Undecided, json!({"a": 2})),
            Row::new(Status::Skipped, json!({"a": 3})),
        ];
        let (out, code) = run(Format::Json, rows);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1]["verdict"], "UNDECIDED");
        let s = &lines[3]["summary"];
        assert_eq!((s["pass"].as_u64(), s["undecided"].as_u64(), s["skipped"].as_u64()), (Some(1), Some(1), Some(1)));
        assert_eq!(code, 3);
    }

    #[test]
    fn failures_dominate_exit_code() {
        let rows = vec![Row::new(false, json!({})), Row::new(Verdict::Undecided, json!({}))];
        assert_eq!(run(Format::Json, rows).1, 1);
        assert_eq!(run(Format::Json, vec![]).1, 0);
    }

    #[test]
    fn csv_rewrites_header_on_new_columns() {
        let rows = vec![
            Row::new(true, json!({"n": 4, "poly": [1, 2]})),
            Row::new(true, json!({"n": 5, "poly": [3]})),
            Row::new(false, json!({"t": 7})),
        ];
        let (out, code) = run(Format::Csv, rows);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "verdict,n,poly");
        assert_eq!(lines[1], "PASS,4,\"[1,2]\"");
        assert_eq!(lines[3], "verdict,t");
        assert!(lines[5].starts_with("verdict,command"));
        assert_eq!(code, 1);
    }
}
