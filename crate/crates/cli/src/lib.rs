//! Batch front end for phasewall: derivations, residual checks, samplers and
//! a combined JSON report.

pub mod check;
pub mod config;
pub mod derive;
pub mod free;
pub mod report;
pub mod sample;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// 17 significant digits; negative zero printed as zero.
pub fn fmt17(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

/// Stable, pretty JSON followed by a newline.
pub fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// Run `body` against the output file, or stdout when no path is given.
pub fn with_output<F>(out: Option<&Path>, body: F) -> anyhow::Result<()>
where
    F: FnOnce(&mut dyn Write) -> anyhow::Result<()>,
{
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}
