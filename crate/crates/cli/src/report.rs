use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// Anything the CLI prints. JSON and CSV come from `Serialize`; text is
/// written by hand.
pub trait Report: Serialize {
    fn text(&self) -> String;
}

pub struct Emitter {
    format: Format,
    out: Box<dyn Write>,
}

impl Emitter {
    pub fn new(format: Format, path: Option<&Path>) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Self { format, out })
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn emit<R: Report>(&mut self, report: &R) -> io::Result<()> {
        match self.format {
            Format::Text => self.out.write_all(report.text().as_bytes()),
            Format::Json => self.json_line(report),
            Format::Csv => self.csv(std::slice::from_ref(report)),
        }
    }

    pub fn json_line<T: Serialize + ?Sized>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        self.out.write_all(b"\n")
    }

    pub fn text_line(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.out, "{line}")
    }

    /// One row per item. Nested values are written as JSON strings, nulls
    /// as empty cells.
    pub fn csv<T: Serialize>(&mut self, rows: &[T]) -> io::Result<()> {
        let mut writer = csv::Writer::from_writer(&mut self.out);
        let mut header_done = false;
        for row in rows {
            let Value::Object(map) = serde_json::to_value(row)? else {
                return Err(io::Error::other("csv rows must be objects"));
            };
            if !header_done {
                writer.write_record(map.keys())?;
                header_done = true;
            }
            writer.write_record(map.values().map(cell))?;
        }
        writer.flush()
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => serde_json::to_string(v).expect("json value"),
    }
}
