//! Two-axis parameter sweeps, lossless CSV export and run records.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::coherence::{g_cross_tmjs, g_single_tmjs, mean_photon_tmjs};
use crate::error::{JanusError, Result};
use crate::exec::{map_indices, Execution};
use crate::params::JanusConfig;
use crate::wigner::{wigner_grid_with, SingleModeJanus, WignerGrid, DEFAULT_EXTENT};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "JANUS_OUT_DIR";
pub const DEFAULT_CLAMP_FLOOR: f64 = 1e-300;
/// Lower clamp on squeeze-magnitude axes for observables that diverge at zero squeezing.
pub const R_AXIS_FLOOR: f64 = 1e-4;
pub const DEFAULT_WIGNER_POINTS: usize = 61;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    R,
    S,
    Theta,
    Phi,
    Delta,
    Chi,
    Eta,
    K,
}

impl Param {
    pub const ALL: [Param; 8] =
        [Param::R, Param::S, Param::Theta, Param::Phi, Param::Delta, Param::Chi, Param::Eta, Param::K];

    pub fn name(self) -> &'static str {
        match self {
            Param::R => "r",
            Param::S => "s",
            Param::Theta => "theta",
            Param::Phi => "phi",
            Param::Delta => "delta",
            Param::Chi => "chi",
            Param::Eta => "eta",
            Param::K => "k",
        }
    }

    fn default_value(self) -> f64 {
        match self {
            Param::R | Param::S => 0.8,
            Param::Chi | Param::Eta => 1.0,
            Param::K => 1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = JanusError;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| JanusError::InvalidSpec(format!("unknown sweep parameter '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    GSingle,
    GCross,
    MeanPhoton,
    WignerMin,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::GSingle => "g_single",
            Observable::GCross => "g_cross",
            Observable::MeanPhoton => "mean_photon",
            Observable::WignerMin => "wigner_min",
        }
    }

    fn diverges_at_zero_squeezing(self) -> bool {
        matches!(self, Observable::GSingle | Observable::GCross)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = JanusError;

    fn from_str(s: &str) -> Result<Self> {
        [Observable::GSingle, Observable::GCross, Observable::MeanPhoton, Observable::WignerMin]
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| JanusError::InvalidSpec(format!("unknown observable '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, count: usize) -> Self {
        Self { param, min, max, count }
    }

    /// Evenly spaced values, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let last = (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + span * (i as f64 / last)).collect()
    }
}

fn default_clamp_floor() -> f64 {
    DEFAULT_CLAMP_FLOOR
}

fn default_k() -> i64 {
    1
}

fn default_wigner_points() -> usize {
    DEFAULT_WIGNER_POINTS
}

fn default_wigner_extent() -> f64 {
    DEFAULT_EXTENT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Axis,
    /// Values for parameters that are not swept; unset ones take built-in defaults.
    #[serde(default)]
    pub fixed: BTreeMap<Param, f64>,
    pub observable: Observable,
    #[serde(default = "default_k")]
    pub k: i64,
    #[serde(default)]
    pub log10_output: bool,
    #[serde(default = "default_clamp_floor")]
    pub clamp_floor: f64,
    /// Tie the second branch to the first: `s = r`, `η = χ`.
    #[serde(default)]
    pub symmetric: bool,
    #[serde(default = "default_wigner_points")]
    pub wigner_points: usize,
    #[serde(default = "default_wigner_extent")]
    pub wigner_extent: f64,
}

impl SweepSpec {
    pub fn new(axis1: Axis, axis2: Axis, observable: Observable, k: i64) -> Self {
        Self {
            axis1,
            axis2,
            fixed: BTreeMap::new(),
            observable,
            k,
            log10_output: false,
            clamp_floor: DEFAULT_CLAMP_FLOOR,
            symmetric: false,
            wigner_points: DEFAULT_WIGNER_POINTS,
            wigner_extent: DEFAULT_EXTENT,
        }
    }

    pub fn with_fixed(mut self, param: Param, value: f64) -> Self {
        self.fixed.insert(param, value);
        self
    }

    pub fn symmetric(mut self, on: bool) -> Self {
        self.symmetric = on;
        self
    }

    pub fn log10(mut self, on: bool) -> Self {
        self.log10_output = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for a in [&self.axis1, &self.axis2] {
            if a.count < 2 {
                return Err(JanusError::InvalidSpec(format!("axis '{}' needs at least 2 points", a.param)));
            }
            if !(a.min.is_finite() && a.max.is_finite()) || a.max < a.min {
                return Err(JanusError::InvalidSpec(format!(
                    "axis '{}' range [{}, {}] is invalid",
                    a.param, a.min, a.max
                )));
            }
        }
        if self.axis1.param == self.axis2.param {
            return Err(JanusError::InvalidSpec("the two axes must sweep different parameters".into()));
        }
        if self.k < 1 && (self.observable != Observable::MeanPhoton && self.observable != Observable::WignerMin) {
            return Err(JanusError::InvalidSpec(format!("coherence order k={} must be >= 1", self.k)));
        }
        if self.clamp_floor.is_nan() || self.clamp_floor <= 0.0 {
            return Err(JanusError::InvalidSpec("clamp floor must be positive".into()));
        }
        if self.log10_output && self.observable == Observable::WignerMin {
            return Err(JanusError::InvalidSpec("log10 output needs a positive observable; wigner_min is not".into()));
        }
        if self.observable == Observable::WignerMin && (self.wigner_points < 3 || self.wigner_points.is_multiple_of(2))
        {
            return Err(JanusError::InvalidSpec("wigner_points must be odd and >= 3".into()));
        }
        Ok(())
    }

    /// Axis values after clamping squeeze magnitudes away from zero where needed.
    fn axis_values(&self, axis: &Axis) -> Vec<f64> {
        let clamp = self.observable.diverges_at_zero_squeezing() && matches!(axis.param, Param::R | Param::S);
        axis.values().into_iter().map(|v| if clamp { v.max(R_AXIS_FLOOR) } else { v }).collect()
    }

    fn resolve(&self, v1: f64, v2: f64) -> BTreeMap<Param, f64> {
        let mut p: BTreeMap<Param, f64> = Param::ALL.iter().map(|&q| (q, q.default_value())).collect();
        p.insert(Param::K, self.k as f64);
        for (&q, &v) in &self.fixed {
            p.insert(q, v);
        }
        p.insert(self.axis1.param, v1);
        p.insert(self.axis2.param, v2);
        if self.symmetric {
            p.insert(Param::S, p[&Param::R]);
            p.insert(Param::Eta, p[&Param::Chi]);
        }
        if self.observable.diverges_at_zero_squeezing() {
            for q in [Param::R, Param::S] {
                if self.fixed.contains_key(&q) || self.axis1.param == q || self.axis2.param == q {
                    continue;
                }
                p.insert(q, p[&q].max(R_AXIS_FLOOR));
            }
        }
        p
    }

    fn eval_cell(&self, v1: f64, v2: f64) -> Result<f64> {
        let p = self.resolve(v1, v2);
        let k = p[&Param::K].round() as i64;
        let parts = (
            p[&Param::R],
            p[&Param::Theta],
            p[&Param::S],
            p[&Param::Phi],
            p[&Param::Chi],
            p[&Param::Eta],
            p[&Param::Delta],
        );
        let value = match self.observable {
            Observable::WignerMin => {
                let s = SingleModeJanus::from_parts(parts.0, parts.1, parts.2, parts.3, parts.4, parts.5, parts.6)?;
                wigner_grid_with(&s, self.wigner_extent, self.wigner_points, Execution::Serial)?.min_value
            }
            obs => {
                let cfg = JanusConfig::from_parts(parts.0, parts.1, parts.2, parts.3, parts.4, parts.5, parts.6)?;
                match obs {
                    Observable::GSingle => g_single_tmjs(&cfg, k)?,
                    Observable::GCross => g_cross_tmjs(&cfg, k)?,
                    _ => mean_photon_tmjs(&cfg)?,
                }
            }
        };
        Ok(if self.log10_output { value.max(self.clamp_floor).log10() } else { value })
    }
}

/// Row-major grid: `values[i * axis2.len() + j]` belongs to `(axis1[i], axis2[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axis1_name: String,
    pub axis1: Vec<f64>,
    pub axis2_name: String,
    pub axis2: Vec<f64>,
    pub values: Vec<f64>,
    /// Header metadata written as `# key=value` lines.
    pub metadata: BTreeMap<String, String>,
}

impl SweepGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.len() + j]
    }

    pub fn failed_cells(&self) -> usize {
        self.values.iter().filter(|v| v.is_nan()).count()
    }

    pub fn finite_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied().filter(|v| v.is_finite())
    }

    /// `(min, max)` over finite cells, `None` if there are none.
    pub fn finite_range(&self) -> Option<(f64, f64)> {
        self.finite_values().fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
    }

    /// Same values compared bit for bit, with all NaNs equal.
    pub fn same_values(&self, other: &SweepGrid) -> bool {
        let eq = |a: &[f64], b: &[f64]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()))
        };
        eq(&self.axis1, &other.axis1) && eq(&self.axis2, &other.axis2) && eq(&self.values, &other.values)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&format!("{},{},value\n", self.axis1_name, self.axis2_name));
        for (i, a) in self.axis1.iter().enumerate() {
            for (j, b) in self.axis2.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", fmt_num(*a), fmt_num(*b), fmt_num(self.at(i, j))));
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut metadata = BTreeMap::new();
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = loop {
            let line = lines.next().ok_or_else(|| JanusError::Parse("missing column header".into()))?;
            match line.strip_prefix('#') {
                Some(rest) => {
                    let (k, v) = rest
                        .trim()
                        .split_once('=')
                        .ok_or_else(|| JanusError::Parse(format!("bad metadata line '{line}'")))?;
                    metadata.insert(k.to_string(), v.to_string());
                }
                None => break line,
            }
        };
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() != 3 {
            return Err(JanusError::Parse(format!("expected 3 columns, got '{header}'")));
        }
        let mut axis1: Vec<f64> = Vec::new();
        let mut axis2: Vec<f64> = Vec::new();
        let mut values = Vec::new();
        for line in lines {
            let nums: Vec<f64> = line
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| JanusError::Parse(format!("'{t}': {e}"))))
                .collect::<Result<_>>()?;
            if nums.len() != 3 {
                return Err(JanusError::Parse(format!("expected 3 fields in '{line}'")));
            }
            if axis1.last().is_none_or(|l| l.to_bits() != nums[0].to_bits()) {
                axis1.push(nums[0]);
            }
            if axis1.len() == 1 {
                axis2.push(nums[1]);
            }
            values.push(nums[2]);
        }
        if axis1.is_empty() || values.len() != axis1.len() * axis2.len() {
            return Err(JanusError::Parse("rows do not form a rectangular grid".into()));
        }
        Ok(Self { axis1_name: cols[0].into(), axis1, axis2_name: cols[1].into(), axis2, values, metadata })
    }
}

impl From<&WignerGrid> for SweepGrid {
    fn from(w: &WignerGrid) -> Self {
        Self {
            axis1_name: "x".into(),
            axis1: w.x_axis.clone(),
            axis2_name: "p".into(),
            axis2: w.p_axis.clone(),
            values: w.values.clone(),
            metadata: BTreeMap::new(),
        }
    }
}

/// 17 significant digits, enough for an exact `f64` round trip.
fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    run_sweep_with(spec, Execution::default())
}

/// Evaluates the observable on every cell. Failed cells become NaN; the sweep only fails when
/// more than half of the cells do.
pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepGrid> {
    spec.validate()?;
    let a1 = spec.axis_values(&spec.axis1);
    let a2 = spec.axis_values(&spec.axis2);
    let n2 = a2.len();
    let values: Vec<f64> =
        map_indices(a1.len() * n2, exec, |c| spec.eval_cell(a1[c / n2], a2[c % n2]).unwrap_or(f64::NAN));
    let failed = values.iter().filter(|v| v.is_nan()).count();
    if 2 * failed > values.len() {
        return Err(JanusError::SweepFailed { failed, total: values.len() });
    }
    Ok(SweepGrid {
        axis1_name: spec.axis1.param.name().into(),
        axis1: a1,
        axis2_name: spec.axis2.param.name().into(),
        axis2: a2,
        values,
        metadata: spec_metadata(spec),
    })
}

fn spec_metadata(spec: &SweepSpec) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("observable".into(), spec.observable.name().into());
    m.insert("k".into(), spec.k.to_string());
    m.insert("log10".into(), spec.log10_output.to_string());
    m.insert("clamp_floor".into(), fmt_num(spec.clamp_floor));
    m.insert("symmetric".into(), spec.symmetric.to_string());
    for (p, v) in &spec.fixed {
        m.insert(format!("fixed.{p}"), fmt_num(*v));
    }
    if spec.observable == Observable::WignerMin {
        m.insert("wigner_points".into(), spec.wigner_points.to_string());
        m.insert("wigner_extent".into(), fmt_num(spec.wigner_extent));
    }
    m
}

/// Provenance of one sweep written to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub spec: SweepSpec,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub library_version: String,
    pub outputs: Vec<PathBuf>,
    pub data_sha256: String,
    pub failed_cells: usize,
    pub total_cells: usize,
}

impl RunRecord {
    /// True when the data file (first output) still hashes to the recorded checksum.
    pub fn checksum_matches(&self) -> Result<bool> {
        let data = self.outputs.first().ok_or_else(|| JanusError::Io("run record lists no outputs".into()))?;
        Ok(sha256_hex(&fs::read(data)?) == self.data_sha256)
    }

    pub fn load(path: &Path) -> Result<Self> {
        serde_json::from_slice(&fs::read(path)?).map_err(|e| JanusError::Parse(e.to_string()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes `bytes` next to `path` and renames into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().ok_or_else(|| JanusError::Io(format!("{} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// `explicit`, else `$JANUS_OUT_DIR`, else the current directory.
pub fn output_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Writes `<stem>.csv`, optionally `<stem>.ppm`, and `<stem>.run.json` into `dir`.
pub fn write_sweep(spec: &SweepSpec, grid: &SweepGrid, dir: &Path, stem: &str, heatmap: bool) -> Result<RunRecord> {
    let csv_path = dir.join(format!("{stem}.csv"));
    let csv = grid.to_csv();
    write_atomic(&csv_path, csv.as_bytes())?;
    let mut outputs = vec![csv_path];
    if heatmap {
        let ppm_path = dir.join(format!("{stem}.ppm"));
        crate::heatmap::render_heatmap(grid, &ppm_path)?;
        outputs.push(ppm_path);
    }
    let record = RunRecord {
        spec: spec.clone(),
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        library_version: env!("CARGO_PKG_VERSION").into(),
        outputs,
        data_sha256: sha256_hex(csv.as_bytes()),
        failed_cells: grid.failed_cells(),
        total_cells: grid.values.len(),
    };
    let json = serde_json::to_vec_pretty(&record).map_err(|e| JanusError::Io(e.to_string()))?;
    write_atomic(&dir.join(format!("{stem}.run.json")), &json)?;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn flat_spec(n: usize) -> SweepSpec {
        SweepSpec::new(
            Axis::new(Param::R, 0.05, 1.5, n),
            Axis::new(Param::Delta, 0.0, 2.0 * PI, n),
            Observable::GSingle,
            2,
        )
        .symmetric(true)
        .log10(true)
    }

    #[test]
    fn axis_endpoints_exact() {
        let a = Axis::new(Param::Delta, 0.0, 2.0 * PI, 201);
        let v = a.values();
        assert_eq!(v[0], 0.0);
        assert_eq!(v[200], 2.0 * PI);
        assert_eq!(v[100], PI);
    }

    #[test]
    fn flat_landscape() {
        let g = run_sweep_with(&flat_spec(21), Execution::Serial).unwrap();
        let finite: Vec<f64> = g.finite_values().collect();
        assert!(finite.len() > 21 * 20 - 21);
        for v in finite {
            assert!((v - 2f64.log10()).abs() < 1e-6, "{v}");
        }
        // δ = π column is the null state
        assert!((0..21).all(|i| g.at(i, 10).is_nan()));
        assert_eq!(g.failed_cells(), 21);
    }

    #[test]
    fn smoke_two_by_two() {
        let g = run_sweep_with(&flat_spec(2), Execution::Serial).unwrap();
        assert_eq!(g.values.len(), 4);
        let csv = g.to_csv();
        let rows = csv.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(rows, 1 + 4);
    }

    #[test]
    fn csv_round_trip_exact() {
        let spec = SweepSpec::new(
            Axis::new(Param::R, 0.1, 1.2, 7),
            Axis::new(Param::Theta, 0.0, PI, 5),
            Observable::GCross,
            3,
        )
        .with_fixed(Param::Delta, 1.0)
        .with_fixed(Param::Eta, 0.6);
        let g = run_sweep_with(&spec, Execution::Serial).unwrap();
        let back = SweepGrid::from_csv(&g.to_csv()).unwrap();
        assert!(back.same_values(&g));
        assert_eq!(back.metadata, g.metadata);
        assert_eq!(back.axis1_name, "r");
    }

    #[test]
    fn nan_round_trip() {
        let g = run_sweep_with(&flat_spec(3), Execution::Serial).unwrap();
        assert!(g.failed_cells() > 0);
        let back = SweepGrid::from_csv(&g.to_csv()).unwrap();
        assert!(back.same_values(&g));
    }

    #[test]
    fn serial_and_parallel_identical() {
        let spec = flat_spec(9);
        let a = run_sweep_with(&spec, Execution::Serial).unwrap();
        let b = run_sweep_with(&spec, Execution::Parallel).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn r_axis_clamped() {
        let spec = SweepSpec::new(
            Axis::new(Param::R, 0.0, 0.5, 3),
            Axis::new(Param::Delta, 0.0, 1.0, 2),
            Observable::GCross,
            1,
        )
        .with_fixed(Param::Eta, 0.0);
        let g = run_sweep_with(&spec, Execution::Serial).unwrap();
        assert_eq!(g.axis1[0], R_AXIS_FLOOR);
        assert!(g.values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn clamp_floor_applies() {
        let spec = SweepSpec::new(
            Axis::new(Param::R, 0.0, 0.5, 2),
            Axis::new(Param::Delta, 0.0, 1.0, 2),
            Observable::MeanPhoton,
            1,
        )
        .with_fixed(Param::Eta, 0.0)
        .log10(true);
        let g = run_sweep_with(&spec, Execution::Serial).unwrap();
        assert_eq!(g.axis1[0], 0.0);
        // vacuum rows fail on mean-photon underflow only for g; mean photon is exactly 0
        assert_eq!(g.at(0, 0), -300.0);
    }

    #[test]
    fn mostly_failing_sweep_is_rejected() {
        let spec = SweepSpec::new(
            Axis::new(Param::Delta, PI, PI, 2),
            Axis::new(Param::Theta, 0.0, 0.0, 2),
            Observable::GSingle,
            1,
        )
        .symmetric(true);
        assert!(matches!(
            run_sweep_with(&spec, Execution::Serial),
            Err(JanusError::SweepFailed { failed: 4, total: 4 })
        ));
    }

    #[test]
    fn invalid_specs() {
        let mut s = flat_spec(1);
        assert!(s.validate().is_err());
        s = flat_spec(3);
        s.axis2.param = Param::R;
        assert!(s.validate().is_err());
        s = flat_spec(3);
        s.k = 0;
        assert!(s.validate().is_err());
        assert!("rho".parse::<Param>().is_err());
        assert_eq!("theta".parse::<Param>().unwrap(), Param::Theta);
        assert_eq!("wigner_min".parse::<Observable>().unwrap(), Observable::WignerMin);
    }

    #[test]
    fn wigner_min_sweep() {
        let mut spec = SweepSpec::new(
            Axis::new(Param::Theta, 0.0, PI, 2),
            Axis::new(Param::Delta, 0.0, PI, 2),
            Observable::WignerMin,
            1,
        )
        .symmetric(true);
        spec.wigner_points = 31;
        let g = run_sweep_with(&spec, Execution::Serial).unwrap();
        // (Δ=π, δ=π) is the odd cat-like superposition
        assert!(g.at(1, 1) < -1e-3);
        assert!(g.at(0, 1).is_nan());
        assert!(g.at(0, 0) > -1e-6);
    }

    #[test]
    fn record_and_checksum() {
        let dir = tempfile::tempdir().unwrap();
        let spec = flat_spec(3);
        let g = run_sweep_with(&spec, Execution::Serial).unwrap();
        let rec = write_sweep(&spec, &g, dir.path(), "flat", true).unwrap();
        assert!(rec.checksum_matches().unwrap());
        let loaded = RunRecord::load(&dir.path().join("flat.run.json")).unwrap();
        assert_eq!(loaded, rec);
        let back = SweepGrid::from_csv(&fs::read_to_string(&rec.outputs[0]).unwrap()).unwrap();
        assert!(back.same_values(&g));
        fs::write(&rec.outputs[0], "tampered").unwrap();
        assert!(!rec.checksum_matches().unwrap());
    }
}
