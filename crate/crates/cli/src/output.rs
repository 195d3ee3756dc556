use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// 17 significant digits, enough to round-trip any f64.
/// Negative zero prints as zero.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// A CSV table held in memory until it is written out.
pub struct Table {
    name: &'static str,
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&str]) -> Result<Self, CliError> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(header).map_err(CliError::csv)?;
        Ok(Self { name, writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).map_err(CliError::csv)
    }

    fn into_bytes(self) -> Result<(&'static str, Vec<u8>), CliError> {
        let bytes = self
            .writer
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        Ok((self.name, bytes))
    }
}

#[derive(Debug, Serialize)]
pub struct OutputFile {
    pub name: String,
    pub sha256: String,
}

/// Describes one run. Holds no timestamps, so identical runs produce
/// identical manifests.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub input_digest: Option<String>,
    pub parameters: Value,
    pub outputs: Vec<OutputFile>,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, input_digest: Option<String>, parameters: Value) -> Self {
        Self {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest,
            parameters,
            outputs: Vec::new(),
            results: Value::Object(Default::default()),
            warnings: Vec::new(),
        }
    }
}

/// Writes `bytes` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let io = |source| CliError::Io {
        path: target.clone(),
        source,
    };
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, &target).map_err(io)?;
    Ok(target)
}

/// Writes the tables and then the manifest listing them.
pub fn emit(dir: &Path, tables: Vec<Table>, mut manifest: RunManifest) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    for t in tables {
        let (name, bytes) = t.into_bytes()?;
        write_atomic(dir, name, &bytes)?;
        manifest.outputs.push(OutputFile {
            name: name.to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
    }
    let mut json = serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::Output(e.to_string()))?;
    json.push(b'\n');
    write_atomic(dir, "manifest.json", &json)?;
    Ok(())
}
