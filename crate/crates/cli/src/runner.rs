//! Report rows, deterministic assembly and output formatting.

use std::time::Instant;

use qserre_core::Report;
use serde::Serialize;

/// One claim outcome in a run. `millis` is filled only when timings are
/// requested, so that reports stay byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub claim: String,
    pub args: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl Row {
    pub fn from_report(r: Report) -> Self {
        Self { claim: r.claim, args: r.args, pass: r.pass, witness: r.witness, millis: None }
    }

    pub fn timed(f: impl FnOnce() -> Report) -> Self {
        let start = Instant::now();
        let report = f();
        let mut row = Self::from_report(report);
        row.millis = Some(start.elapsed().as_millis());
        row
    }
}

#[derive(Serialize)]
pub struct JsonReport<'a> {
    pub schema: u32,
    pub command: &'a str,
    pub config: serde_json::Value,
    pub rows: &'a [Row],
    pub summary: Summary,
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Sort rows into the stable output order and strip timings unless asked.
pub fn finalize(mut rows: Vec<Row>, timings: bool) -> Vec<Row> {
    rows.sort_by(|a, b| (&a.claim, &a.args).cmp(&(&b.claim, &b.args)));
    if !timings {
        for row in &mut rows {
            row.millis = None;
        }
    }
    rows
}

pub fn summary(rows: &[Row]) -> Summary {
    let passed = rows.iter().filter(|r| r.pass).count();
    Summary { total: rows.len(), passed, failed: rows.len() - passed }
}

pub enum Format {
    Text,
    Json,
}

pub fn emit(command: &str, config: serde_json::Value, rows: &[Row], format: &Format) {
    match format {
        Format::Json => {
            let report = JsonReport {
                schema: 1,
                command,
                config,
                rows,
                summary: summary(rows),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        Format::Text => {
            for row in rows {
                let status = if row.pass { "PASS" } else { "FAIL" };
                match (&row.witness, row.millis) {
                    (Some(w), _) => println!("{status} {} [{}] witness: {w}", row.claim, row.args),
                    (None, Some(ms)) => println!("{status} {} [{}] ({ms} ms)", row.claim, row.args),
                    (None, None) => println!("{status} {} [{}]", row.claim, row.args),
                }
            }
            let s = summary(rows);
            println!("summary: {} claims, {} passed, {} failed", s.total, s.passed, s.failed);
        }
    }
}
