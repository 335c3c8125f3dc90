use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context as _;
use serde::Serialize;
use serde_json::json;

/// Where results go; all writes happen on the calling thread.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Self {
        Self { out }
    }

    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    /// One JSON document per line.
    pub fn json_lines<T: Serialize>(&self, items: &[T]) -> anyhow::Result<()> {
        let mut w = self.writer()?;
        for item in items {
            serde_json::to_writer(&mut w, item)?;
            writeln!(w)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn csv<R>(&self, header: &[&str], rows: R) -> anyhow::Result<()>
    where
        R: IntoIterator,
        R::Item: IntoIterator,
        <R::Item as IntoIterator>::Item: AsRef<[u8]>,
    {
        let mut w = csv::Writer::from_writer(self.writer()?);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn text(&self, lines: &[String]) -> anyhow::Result<()> {
        let mut w = self.writer()?;
        for l in lines {
            writeln!(w, "{l}")?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Appends one JSON line per item; the file is never truncated.
pub fn append_archive<T: Serialize>(path: &Path, items: &[T]) -> anyhow::Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening archive {}", path.display()))?;
    let mut w = BufWriter::new(file);
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn error_report(err: &anyhow::Error) -> String {
    let kind = err
        .downcast_ref::<emeasure::Error>()
        .map(|e| e.kind())
        .unwrap_or_else(|| {
            if err.to_string().starts_with("input domain") {
                "input-domain"
            } else {
                "usage"
            }
        });
    json!({ "status": "error", "kind": kind, "message": format!("{err:#}") }).to_string()
}

pub fn failure_report(check: &str, params: &str, detail: &str) -> String {
    json!({
        "status": "fail",
        "first_failure": { "check": check, "params": params, "detail": detail },
    })
    .to_string()
}
