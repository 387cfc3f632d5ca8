//! Sweep configuration: dimension list, noise grid, tolerances, seed.
//!
//! A JSON file can be supplied with --config; command-line flags override
//! individual fields.

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct XGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl XGrid {
    /// Deterministic grid: start + k*step for k = 0..=floor((stop-start)/step).
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    pub algebra: f64,
    pub capacity: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub d_values: Vec<usize>,
    pub x_grid: XGrid,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output_format: Format,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            d_values: (2..=8).collect(),
            x_grid: XGrid {
                start: 0.0,
                stop: 1.0,
                step: 0.25,
            },
            tolerances: Tolerances {
                algebra: 1e-10,
                capacity: 1e-9,
            },
            seed: 7,
            output_format: Format::Csv,
        }
    }
}

impl SweepConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.x_grid.step <= 0.0 {
            return Err(CliError::Usage("x grid step must be > 0".into()));
        }
        if self.x_grid.start > self.x_grid.stop {
            return Err(CliError::Usage("x grid start must be <= stop".into()));
        }
        if !(0.0..=1.0).contains(&self.x_grid.start) || !(0.0..=1.0).contains(&self.x_grid.stop) {
            return Err(CliError::Usage("x grid must lie inside [0,1]".into()));
        }
        if self.d_values.is_empty() {
            return Err(CliError::Usage("at least one dimension is required".into()));
        }
        if let Some(&d) = self.d_values.iter().find(|&&d| d < 2) {
            return Err(CliError::Usage(format!("dimensions must be >= 2, got {d}")));
        }
        Ok(())
    }
}
