use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use lsi_forge::{Defaults, Tolerances};

pub const SCHEMA: &str = "lsi-forge.report.v1";

/// Top-level JSON document written by every command.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub command: &'static str,
    /// The statement the run checks.
    pub claim: &'static str,
    pub verdict: &'static str,
    pub config: Value,
    pub tolerances: Tolerances,
    pub defaults: Defaults,
    pub report: Value,
}

impl Envelope {
    pub fn new(
        command: &'static str,
        claim: &'static str,
        pass: bool,
        config: Value,
        tol: Tolerances,
        report: Value,
    ) -> Self {
        Self {
            schema: SCHEMA,
            command,
            claim,
            verdict: if pass { "pass" } else { "fail" },
            config,
            tolerances: tol,
            defaults: Defaults::default(),
            report,
        }
    }
}

/// Opens `path`, or stdout when absent.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json(envelope: &Envelope, path: Option<&Path>) -> io::Result<()> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, envelope)?;
    writeln!(out)?;
    out.flush()
}
