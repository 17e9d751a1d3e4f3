//! Rendering of command results as plain text, CSV or JSON.
//!
//! JSON goes through `serde_json::Value`, whose maps keep keys sorted, so
//! re-serializing parsed output reproduces it byte for byte.

use std::io::{self, Write};
use std::time::Instant;

use clap::ValueEnum;
use numfac::NumericalMonoid;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// What every result is wrapped in.
pub struct Context<'a> {
    pub monoid: &'a NumericalMonoid,
    pub command: &'static str,
    pub format: Format,
    pub started: Instant,
}

impl Context<'_> {
    pub fn envelope(&self, payload: Value) -> Value {
        json!({
            "command": self.command,
            "monoid": {
                "generators": self.monoid.generators(),
                "frobenius": self.monoid.frobenius(),
            },
            "payload": payload,
            "timing_ms": self.started.elapsed().as_millis() as u64,
        })
    }
}

/// A complete result held in memory.
pub struct Report {
    pub payload: Value,
    pub plain: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn write<W: Write>(self, ctx: &Context<'_>, mut out: W) -> io::Result<()> {
        match ctx.format {
            Format::Plain => {
                for line in &self.plain {
                    writeln!(out, "{line}")?;
                }
            }
            Format::Json => writeln!(out, "{}", ctx.envelope(self.payload))?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        out.flush()
    }
}

pub fn cells<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(T::to_string).collect()
}

pub fn header(names: &[&str]) -> Vec<String> {
    cells(names)
}

pub fn spaced<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// One item of a possibly streamed listing.
pub trait Record {
    fn json(&self) -> Value;
    /// Usually one row; an item may expand to several or none.
    fn csv(&self) -> Vec<Vec<String>>;
    fn plain(&self) -> String;
}

enum Sink<W: Write> {
    Text(W),
    Csv(Box<csv::Writer<W>>),
}

/// Writes records as they are produced.
///
/// Plain and CSV output is always incremental. JSON is collected into one
/// envelope under `key` unless streaming, in which case every record is a
/// line of its own and a final envelope line carries the summary payload.
pub struct Emitter<'c, 'm, W: Write> {
    ctx: &'c Context<'m>,
    key: &'static str,
    stream: bool,
    sink: Sink<W>,
    items: Vec<Value>,
    count: u64,
}

impl<'c, 'm, W: Write> Emitter<'c, 'm, W> {
    pub fn new(ctx: &'c Context<'m>, out: W, key: &'static str, header: Vec<String>, stream: bool) -> io::Result<Self> {
        let sink = if ctx.format == Format::Csv {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            Sink::Csv(Box::new(w))
        } else {
            Sink::Text(out)
        };
        Ok(Self {
            ctx,
            key,
            stream,
            sink,
            items: Vec::new(),
            count: 0,
        })
    }

    pub fn push(&mut self, record: &impl Record) -> io::Result<()> {
        self.count += 1;
        match (&mut self.sink, self.ctx.format) {
            (Sink::Csv(w), _) => {
                for row in record.csv() {
                    w.write_record(&row)?;
                }
            }
            (Sink::Text(out), Format::Json) if self.stream => writeln!(out, "{}", record.json())?,
            (Sink::Text(_), Format::Json) => self.items.push(record.json()),
            (Sink::Text(out), _) => writeln!(out, "{}", record.plain())?,
        }
        Ok(())
    }

    /// Writes the closing envelope (JSON only). `extra` holds the payload
    /// fields besides the records and `count`.
    pub fn finish(self, mut extra: Map<String, Value>) -> io::Result<()> {
        extra.insert("count".into(), self.count.into());
        match self.sink {
            Sink::Csv(mut w) => w.flush()?,
            Sink::Text(mut out) => {
                if self.ctx.format == Format::Json {
                    if !self.stream {
                        extra.insert(self.key.into(), Value::Array(self.items));
                    }
                    writeln!(out, "{}", self.ctx.envelope(Value::Object(extra)))?;
                }
                out.flush()?;
            }
        }
        Ok(())
    }
}
