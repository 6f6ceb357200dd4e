//! Machine-readable summary of one command run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub config: ExperimentConfig,
    pub timings: Vec<StageTiming>,
    /// Condition estimates, residuals and similar scalars, by name.
    pub diagnostics: BTreeMap<String, f64>,
    pub outputs: Vec<PathBuf>,
}

impl RunRecord {
    pub fn new(command: &str, config: &ExperimentConfig) -> Self {
        Self {
            command: command.into(),
            config: config.clone(),
            timings: Vec::new(),
            diagnostics: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    /// Runs `f`, recording its wall time under `stage`.
    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(StageTiming {
            stage: stage.into(),
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }

    pub fn diagnostic(&mut self, name: impl Into<String>, value: f64) {
        self.diagnostics.insert(name.into(), value);
    }

    pub fn output(&mut self, path: PathBuf) {
        self.outputs.push(path);
    }

    /// Writes the record as `record.json` in `dir` after checking that all
    /// listed outputs exist; the record itself joins the manifest.
    pub fn finish(mut self, dir: &Path) -> Result<Self> {
        if let Some(missing) = self.outputs.iter().find(|p| !p.exists()) {
            return Err(HarnessError::Format(format!(
                "manifest entry {} was not written",
                missing.display()
            )));
        }
        let path = dir.join("record.json");
        self.outputs.push(path.clone());
        let text = serde_json::to_string_pretty(&self)?;
        std::fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
        Ok(self)
    }
}
