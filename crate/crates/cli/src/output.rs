//! Output directory handling and the per-run manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sususy::config::fingerprint_text;
use sususy::io::CsvDoc;
use sususy::VERSION;

use crate::config::RunConfig;
use crate::error::CliError;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub fingerprint: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    tool: String,
    version: &'a str,
    fingerprint: &'a str,
    config: serde_json::Map<String, Value>,
    inputs: &'a [InputRecord],
    outputs: Vec<String>,
    duration_seconds: f64,
}

/// One command's output directory, `<root>/<command>`.
///
/// Every file written through it gets a `run` header carrying the run
/// fingerprint, and is listed in `manifest.json` by [`finish`](Self::finish).
pub struct OutputDir {
    dir: PathBuf,
    command: String,
    fingerprint: String,
    files: Vec<String>,
    inputs: Vec<InputRecord>,
    started: Instant,
}

impl OutputDir {
    /// Creates the directory and removes the files listed by a previous
    /// manifest there.
    pub fn prepare(root: &Path, command: &str, cfg: &RunConfig) -> Result<Self, CliError> {
        let dir = root.join(command);
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        let old = dir.join(MANIFEST);
        if let Ok(text) = std::fs::read_to_string(&old) {
            if let Ok(v) = serde_json::from_str::<Value>(&text) {
                for name in v["outputs"].as_array().into_iter().flatten().filter_map(Value::as_str) {
                    if !name.contains(['/', '\\']) {
                        let _ = std::fs::remove_file(dir.join(name));
                    }
                }
            }
            let _ = std::fs::remove_file(&old);
        }
        Ok(Self {
            dir,
            command: command.to_string(),
            fingerprint: cfg.fingerprint(),
            files: Vec::new(),
            inputs: Vec::new(),
            started: Instant::now(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Records an input file and returns its content fingerprint.
    pub fn record_input(&mut self, path: &Path, contents: &str) -> String {
        let fp = fingerprint_text(contents);
        self.inputs.push(InputRecord { path: path.display().to_string(), fingerprint: fp.clone() });
        fp
    }

    fn write(&mut self, name: &str, text: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        Ok(path)
    }

    /// Writes a CSV document with an added `run` header line.
    pub fn write_csv(&mut self, name: &str, text: &str) -> Result<PathBuf, CliError> {
        let mut doc = CsvDoc::parse(text)?;
        doc.push_meta("run", self.fingerprint.clone());
        let rendered = doc.render();
        self.write(name, &rendered)
    }

    /// Writes a JSON object with an added top-level `run` key.
    pub fn write_json(&mut self, name: &str, mut value: Value) -> Result<PathBuf, CliError> {
        if let Some(map) = value.as_object_mut() {
            map.insert("run".into(), Value::String(self.fingerprint.clone()));
        }
        let text = serde_json::to_string_pretty(&value).expect("json value serializes") + "\n";
        self.write(name, &text)
    }

    /// Writes a text file (plot script, report) whose first line is a
    /// `# run:` comment.
    pub fn write_text(&mut self, name: &str, body: &str) -> Result<PathBuf, CliError> {
        let text = format!("# run: {}\n{body}", self.fingerprint);
        self.write(name, &text)
    }

    /// Writes `manifest.json`, listing every output including itself.
    pub fn finish(mut self, cfg: &RunConfig) -> Result<PathBuf, CliError> {
        let mut config = serde_json::Map::new();
        for line in cfg.canonical().lines() {
            if let Some((k, v)) = line.split_once('=') {
                config.insert(k.to_string(), Value::String(v.to_string()));
            }
        }
        let mut outputs = self.files.clone();
        outputs.push(MANIFEST.to_string());
        outputs.sort();
        let manifest = Manifest {
            command: &self.command,
            tool: format!("sususy {VERSION}"),
            version: VERSION,
            fingerprint: &self.fingerprint,
            config,
            inputs: &self.inputs,
            outputs,
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        let value = serde_json::to_value(&manifest).expect("manifest serializes");
        self.write_json(MANIFEST, value)
    }
}
