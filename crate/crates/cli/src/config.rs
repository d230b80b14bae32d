//! Optional TOML configuration and argument parsing helpers.
//!
//! ```toml
//! out_dir = "runs"
//!
//! [state]
//! r = 0.8
//! delta = 3.141592653589793
//! k = 2
//!
//! [wigner]
//! points = 101
//!
//! [sweep]
//! observable = "g_single"
//! k = 2
//! symmetric = true
//! axis1 = { param = "r", min = 0.05, max = 1.5, count = 201 }
//! axis2 = { param = "delta", min = 0.0, max = 6.283185307179586, count = 201 }
//! ```

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use janus_core::sweep::SweepSpec;
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub state: StateDefaults,
    #[serde(default)]
    pub wigner: WignerDefaults,
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDefaults {
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub s: Option<f64>,
    pub phi: Option<f64>,
    pub chi: Option<f64>,
    pub eta: Option<f64>,
    pub delta: Option<f64>,
    pub k: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WignerDefaults {
    pub extent: Option<f64>,
    pub points: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// A real number, or a multiple of π written as `pi`, `2pi`, `-pi/2`, `3pi/4`.
pub fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    let Some(idx) = t.find("pi") else {
        return t.parse::<f64>().map_err(|e| anyhow!("'{text}': {e}"));
    };
    let coeff = match &t[..idx] {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.trim_end_matches('*').parse::<f64>().map_err(|e| anyhow!("'{text}': {e}"))?,
    };
    let rest = &t[idx + 2..];
    let denom = match rest.strip_prefix('/') {
        Some(d) => d.parse::<f64>().map_err(|e| anyhow!("'{text}': {e}"))?,
        None if rest.is_empty() => 1.0,
        None => return Err(anyhow!("'{text}' is not a number")),
    };
    Ok(coeff * PI / denom)
}
