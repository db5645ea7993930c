use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::CliResult;

/// Everything needed to reproduce a report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub catalog: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub tool_version: &'static str,
    pub rng: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunManifest {
    /// `# {...}` line heading every CSV. The timestamp is left out so that
    /// identical runs produce identical bytes.
    pub fn header_line(&self) -> String {
        let untimed = RunManifest {
            timestamp: None,
            ..self.clone()
        };
        format!("# {}\n", serde_json::to_string(&untimed).expect("manifest serializes"))
    }
}

/// A named CSV or JSON file produced by a subcommand.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub file_name: String,
    pub content: String,
}

#[derive(Debug)]
pub struct Output {
    /// Main CSV report; printed to stdout.
    pub report: String,
    pub artifacts: Vec<Artifact>,
}

impl Output {
    pub fn new(report: String) -> Self {
        Output {
            report,
            artifacts: Vec::new(),
        }
    }
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV from UTF-8 fields"))
}

pub fn num(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}

/// Prints the report and, with an output directory, writes it alongside its
/// artifacts and a timestamped `manifest.json`.
pub fn emit(subcommand: &str, manifest: &RunManifest, out: &Output, out_dir: Option<&Path>) -> CliResult<()> {
    let header = manifest.header_line();
    print!("{header}{}", out.report);
    let Some(dir) = out_dir else {
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{subcommand}.csv")), format!("{header}{}", out.report))?;
    for a in &out.artifacts {
        let body = if a.file_name.ends_with(".csv") {
            format!("{header}{}", a.content)
        } else {
            a.content.clone()
        };
        fs::write(dir.join(&a.file_name), body)?;
    }
    let timed = RunManifest {
        timestamp: Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)),
        ..manifest.clone()
    };
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&timed)? + "\n")?;
    log::info!("wrote {} file(s) to {}", out.artifacts.len() + 2, dir.display());
    Ok(())
}
