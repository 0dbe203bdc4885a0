//! `key = value` settings file for the numeric routes.

use std::path::Path;

use classical_zeta::numeric::{ContourSpec, NumericConfig};

use crate::CliError;

/// Environment variable naming a settings file when `--config` is absent.
pub const CONFIG_ENV: &str = "CLASSICAL_ZETA_CONFIG";

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Settings {
    pub numeric: NumericConfig,
    pub contour: ContourSpec,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut settings = Settings::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            settings.set(key.trim(), value.trim())?;
        }
        Ok(settings)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |e: &dyn std::fmt::Display| CliError::Config(format!("{key} = {value}: {e}"));
        let float = || value.parse::<f64>().map_err(|e| bad(&e));
        let count = || value.parse::<usize>().map_err(|e| bad(&e));
        match key {
            "em_terms_n" => self.numeric.em_terms_n = count()?,
            "em_terms_j" => self.numeric.em_terms_j = count()?,
            "target_tol" => self.numeric.target_tol = float()?,
            "radius" => self.contour.radius = float()?,
            "x_max" => self.contour.x_max = Some(float()?),
            "panels_ray" => self.contour.panels_ray = count()?,
            "panels_arc" => self.contour.panels_arc = count()?,
            "nodes_per_panel" => self.contour.nodes_per_panel = count()?,
            "contour_tol" => self.contour.tolerance = float()?,
            _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }
}
