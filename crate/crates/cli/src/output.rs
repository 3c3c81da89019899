//! Numeric formatting and file output.
//!
//! Floats are printed with 17 significant digits. CSV files begin with a
//! version comment line followed by the header row; every record is flushed
//! as soon as it is written so an interrupted run leaves its finished rows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

pub const CSV_VERSION_LINE: &str = "# permci-csv v1";

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// CSV sink writing to a file or standard output.
pub struct CsvSink {
    inner: csv::Writer<Box<dyn Write>>,
}

impl CsvSink {
    pub fn create(path: Option<&Path>, header: &[&str]) -> Result<Self> {
        let mut raw: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
            None => Box::new(io::stdout()),
        };
        writeln!(raw, "{CSV_VERSION_LINE}")?;
        let mut inner = csv::Writer::from_writer(raw);
        inner.write_record(header)?;
        inner.flush()?;
        Ok(Self { inner })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields)?;
        self.inner.flush()?;
        Ok(())
    }
}

/// Appends one record to `path`, writing the version line and header first
/// when the file is new or empty.
pub fn append_csv_row(path: &Path, header: &[&str], fields: &[String]) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut file = std::fs::OpenOptions::new().create(true).append(true).open(path).with_context(|| format!("opening {}", path.display()))?;
    if fresh {
        writeln!(file, "{CSV_VERSION_LINE}")?;
    }
    let mut w = csv::WriterBuilder::new().from_writer(file);
    if fresh {
        w.write_record(header)?;
    }
    w.write_record(fields)?;
    w.flush()?;
    Ok(())
}
