//! Run configuration shared by the CLI commands.

use sparse_thue_core::census::enumerate::MAX_BOUND;
use sparse_thue_core::AnalysisParams;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("h must be at least 1")]
    ZeroH,
    #[error("precision ceiling {ceiling} is below the starting precision {start}")]
    Ceiling { start: u32, ceiling: u32 },
    #[error("box {0:?} is not a non-negative integer (forms like 1000 or 1e5 are accepted)")]
    Box(String),
    #[error("box {0} exceeds 2^53")]
    BoxTooLarge(u64),
    #[error("need 0 < a < b < 1, got a = {a}, b = {b}")]
    Siegel { a: f64, b: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub h: u64,
    pub bound: u64,
    pub a: f64,
    pub b: f64,
    pub precision: u32,
    pub ceiling: u32,
    pub format: OutputFormat,
    pub seed: u64,
    pub workers: usize,
}

impl RunConfig {
    pub fn validate(self) -> Result<Self, ConfigError> {
        if self.h == 0 {
            return Err(ConfigError::ZeroH);
        }
        if self.ceiling < self.precision {
            return Err(ConfigError::Ceiling {
                start: self.precision,
                ceiling: self.ceiling,
            });
        }
        if self.bound > MAX_BOUND {
            return Err(ConfigError::BoxTooLarge(self.bound));
        }
        if !(self.a > 0.0 && self.a < self.b && self.b < 1.0) {
            return Err(ConfigError::Siegel { a: self.a, b: self.b });
        }
        Ok(self)
    }

    pub fn params(&self) -> AnalysisParams {
        AnalysisParams {
            precision: self.precision,
            a: self.a,
            b: self.b,
        }
    }
}

/// Box edge `X` from `"1000"`, `"1e5"` or `"2.5e3"`; must be a whole number.
pub fn parse_box(text: &str) -> Result<u64, ConfigError> {
    let t = text.trim();
    if let Ok(n) = t.parse::<u64>() {
        return Ok(n);
    }
    let err = || ConfigError::Box(text.to_string());
    let v: f64 = t.parse().map_err(|_| err())?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > MAX_BOUND as f64 {
        return Err(err());
    }
    Ok(v as u64)
}
