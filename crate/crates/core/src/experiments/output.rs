//! CSV and JSON artifact writers.
//!
//! `base` is a path stem: a campaign writes `<base>.csv` (per-trial
//! records) and `<base>.json` (summary with config echo and schema
//! version). Floats are emitted in shortest round-trip form, so equal
//! runs produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::Result;

use super::config::{Lemma1Config, OracleCampaignConfig};
use super::run::{CampaignOutput, Lemma1Output, OracleComparison};

fn sibling_with_extension(base: &Path, extension: &str) -> PathBuf {
    let mut name = base.file_name().unwrap_or_default().to_os_string();
    name.push(".");
    name.push(extension);
    base.with_file_name(name)
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    Ok(())
}

fn write_csv<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
    ensure_parent(path)?;
    let mut writer = csv::Writer::from_path(path)?;
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    ensure_parent(path)?;
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| crate::Error::Config(format!("summary serialization failed: {e}")))?;
    text.push('\n');
    let mut file = fs::File::create(path)?;
    file.write_all(text.as_bytes())?;
    Ok(())
}

/// Write `<base>.csv` and `<base>.json` for a simulate/ratio campaign.
pub fn write_campaign(output: &CampaignOutput, base: &Path) -> Result<(PathBuf, PathBuf)> {
    let csv_path = sibling_with_extension(base, "csv");
    let json_path = sibling_with_extension(base, "json");
    write_csv(&csv_path, &output.records)?;
    write_json(&json_path, &output.summary)?;
    Ok((csv_path, json_path))
}

#[derive(Serialize)]
struct Lemma1Summary<'a> {
    schema_version: &'static str,
    config: &'a Lemma1Config,
    cells: &'a [super::run::Lemma1Cell],
}

/// Write `<base>.csv` and `<base>.json` for a lemma1 campaign.
pub fn write_lemma1(
    output: &Lemma1Output,
    config: &Lemma1Config,
    base: &Path,
) -> Result<(PathBuf, PathBuf)> {
    let csv_path = sibling_with_extension(base, "csv");
    let json_path = sibling_with_extension(base, "json");
    write_csv(&csv_path, &output.records)?;
    write_json(
        &json_path,
        &Lemma1Summary {
            schema_version: "lemma1/v1",
            config,
            cells: &output.cells,
        },
    )?;
    Ok((csv_path, json_path))
}

#[derive(Serialize)]
struct OracleSummary<'a> {
    schema_version: &'static str,
    config: &'a OracleCampaignConfig,
    cells: &'a [super::run::OracleCell],
}

/// Write `<base>.csv` and `<base>.json` for an oracle comparison.
pub fn write_oracle(
    output: &OracleComparison,
    config: &OracleCampaignConfig,
    base: &Path,
) -> Result<(PathBuf, PathBuf)> {
    let csv_path = sibling_with_extension(base, "csv");
    let json_path = sibling_with_extension(base, "json");
    write_csv(&csv_path, &output.records)?;
    write_json(
        &json_path,
        &OracleSummary {
            schema_version: "oracle/v1",
            config,
            cells: &output.cells,
        },
    )?;
    Ok((csv_path, json_path))
}
