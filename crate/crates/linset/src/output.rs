//! Rendering reports and writing them out.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Format;
use crate::schema::{CertificateDoc, CheckResult, ConstructDoc, ErrorDoc};
use crate::CliError;

/// A rendered report together with its deterministic file stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub stem: String,
    pub format: Format,
    pub body: String,
}

impl Document {
    pub fn file_name(&self) -> String {
        format!("{}.{}", self.stem, self.format.extension())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sink {
    Stdout,
    Dir(PathBuf),
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Sink {
        dir.map_or(Sink::Stdout, Sink::Dir)
    }

    /// Returns the path written, if any.
    pub fn write(&self, doc: &Document) -> Result<Option<PathBuf>, CliError> {
        match self {
            Sink::Stdout => {
                let mut out = std::io::stdout().lock();
                out.write_all(doc.body.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))?;
                Ok(None)
            }
            Sink::Dir(dir) => {
                let path = dir.join(doc.file_name());
                write_file(dir, &path, &doc.body)?;
                Ok(Some(path))
            }
        }
    }
}

fn write_file(dir: &Path, path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))?;
    std::fs::write(path, body).map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn emit_error(doc: &ErrorDoc) {
    let line = serde_json::to_string(doc).expect("error documents serialize");
    eprintln!("{line}");
}

/// Long-form CSV with one `section,key,value` row per fact.
struct Rows(Vec<[String; 3]>);

impl Rows {
    fn new() -> Self {
        Rows(Vec::new())
    }

    fn push(&mut self, section: &str, key: impl ToString, value: impl ToString) {
        self.0.push([section.to_string(), key.to_string(), value.to_string()]);
    }

    fn checks(&mut self, checks: &[CheckResult]) {
        for c in checks {
            let verdict = if c.passed { "pass" } else { "fail" };
            self.push("check", &c.name, format!("{verdict}: {}", c.detail));
        }
    }

    fn render(self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "key", "value"]).expect("in-memory write");
        for row in &self.0 {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

fn element_text(coeffs: &[u32]) -> String {
    coeffs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn point_text(coords: &[Vec<u32>]) -> String {
    coords.iter().map(|c| element_text(c)).collect::<Vec<_>>().join(";")
}

fn config_rows(rows: &mut Rows, config: &crate::ExperimentConfig) {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    rows.push("config", "p", config.p);
    rows.push("config", "e", config.e);
    rows.push("config", "h", config.h);
    if let Some(m) = &config.modulus {
        rows.push("config", "modulus", element_text(m));
    }
    if let Some(seed) = config.seed {
        rows.push("config", "seed", seed);
    }
    rows.push("config", "s", config.s);
    rows.push("config", "partition", join(&config.partition));
    let checks: Vec<&str> = config.checks.iter().map(|c| c.name()).collect();
    rows.push("config", "checks", checks.join(" "));
    rows.push("config", "points", config.points);
}

pub fn construct_csv(doc: &ConstructDoc) -> String {
    let mut rows = Rows::new();
    rows.push("meta", "schema", doc.schema);
    rows.push("meta", "command", &doc.command);
    config_rows(&mut rows, &doc.config);
    rows.push("field", "modulus", element_text(&doc.field.modulus));
    rows.push("summary", "alpha", element_text(&doc.alpha));
    rows.push("summary", "k", doc.k);
    rows.push("summary", "size", &doc.size);
    rows.push("summary", "predicted_size", &doc.predicted_size);
    rows.push("summary", "max_weight", doc.max_weight);
    rows.push("summary", "club", &doc.club);
    for (i, x) in doc.spectrum.iter().enumerate() {
        rows.push("spectrum", i + 1, x);
    }
    rows.checks(&doc.checks);
    rows.push("summary", "passed", doc.passed);
    for p in doc.points.iter().flatten() {
        rows.push("point", point_text(&p.coords), p.weight);
    }
    rows.render()
}

pub fn certificate_csv(doc: &CertificateDoc) -> String {
    let mut rows = Rows::new();
    rows.push("meta", "schema", doc.schema);
    rows.push("meta", "command", &doc.command);
    config_rows(&mut rows, &doc.config);
    rows.push("field", "modulus", element_text(&doc.field.modulus));
    rows.push("summary", "alpha", element_text(&doc.alpha));
    rows.push("summary", "size", doc.size);
    rows.push("summary", "blocking", doc.blocking);
    rows.push("summary", "minimal", doc.minimal);
    rows.push("summary", "small", doc.small);
    for l in &doc.redei_lines {
        rows.push("redei_line", point_text(&l.line), l.rank);
    }
    for (n, lines) in &doc.secant_histogram {
        rows.push("secants", n, lines);
    }
    rows.checks(&doc.checks);
    rows.push("summary", "passed", doc.passed);
    rows.render()
}
