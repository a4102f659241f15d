use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub item: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Computed,
    Match,
    Mismatch(Vec<Mismatch>),
}

/// Flat rows for `--format csv`.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub provenance: Vec<String>,
    pub status: Status,
    pub table: Table,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, results: Value, table: Table) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        RunReport {
            command: command.to_string(),
            parameters,
            results,
            provenance: Vec::new(),
            status: Status::Computed,
            table,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Mismatch(_) => 1,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "command": self.command,
            "parameters": Value::Object(self.parameters.clone()),
            "results": self.results,
            "provenance": self.provenance,
        });
        let status = match &self.status {
            Status::Computed => json!("computed"),
            Status::Match => json!("match"),
            Status::Mismatch(_) => json!("mismatch"),
        };
        out["status"] = status;
        if let Status::Mismatch(items) = &self.status {
            out["mismatches"] = items
                .iter()
                .map(|m| json!({"item": m.item, "expected": m.expected, "computed": m.computed}))
                .collect();
        }
        out
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let text = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                writeln!(out, "{text}")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.table.header)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
