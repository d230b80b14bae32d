//! `janus`: evaluate, sweep and verify two-mode Janus state statistics.

mod config;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use janus_core::coherence::{g_cross_tmjs, g_single_tmjs, kernel, mean_photon_tmjs};
use janus_core::dynamics::{
    ramsey_sequence, schwarzian, schwarzian_flux, MirrorTrajectory, SchmidtModePair, SCHWARZIAN_STEP,
};
use janus_core::exec::Execution;
use janus_core::fock::MomentKind;
use janus_core::heatmap::render_heatmap;
use janus_core::polynomials::squeezing_polynomial;
use janus_core::sweep::{
    output_dir, run_sweep_with, write_atomic, write_sweep, Axis, Observable, Param, SweepGrid, OUT_DIR_ENV,
};
use janus_core::verify::{verify_suite_with, VerifyLevel, DEFAULT_SEED};
use janus_core::wigner::{wigner_grid_with, SingleModeJanus, DEFAULT_EXTENT, DEFAULT_POINTS};
use janus_core::JanusConfig;

use config::{parse_real, FileConfig, StateDefaults};

#[derive(Parser)]
#[command(name = "janus", version, about = "Photon statistics of superposed two-mode squeezed vacua")]
struct Cli {
    /// TOML file whose values replace the built-in defaults; flags still take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for written files.
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    /// Evaluate on one thread.
    #[arg(long, global = true)]
    serial: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single evaluation, JSON on stdout.
    Coherence {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value = "g-cross")]
        observable: ObservableArg,
        #[arg(long, short)]
        k: Option<i64>,
    },
    /// Two-axis sweep to CSV, optionally with a PPM heat map.
    Sweep(SweepArgs),
    /// Single-mode Wigner grid to CSV and PPM.
    Wigner {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        extent: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value = "wigner")]
        stem: String,
    },
    /// Squeeze, dwell, unsqueeze Bogoliubov map.
    Ramsey {
        #[arg(long, value_parser = parse_real)]
        r: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        phi: f64,
        /// Dwell phase of a second history; adds the Schmidt-mode pair and overlap.
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        phi2: Option<f64>,
    },
    /// Energy flux radiated by a moving mirror.
    Schwarzian {
        #[arg(long, value_enum, default_value = "exponential")]
        trajectory: TrajectoryArg,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        /// Two-column `u,p` CSV of a sampled trajectory; overrides `--trajectory`.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, default_value_t = SCHWARZIAN_STEP)]
        step: f64,
    },
    /// Run the self-verification suite; exit status 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Default, Clone)]
struct StateArgs {
    #[arg(long, value_parser = parse_real)]
    r: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    s: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    chi: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    eta: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    delta: Option<f64>,
}

impl StateArgs {
    fn resolve(&self, d: &StateDefaults) -> [f64; 7] {
        [
            self.r.or(d.r).unwrap_or(0.8),
            self.theta.or(d.theta).unwrap_or(0.0),
            self.s.or(d.s).unwrap_or(0.8),
            self.phi.or(d.phi).unwrap_or(0.0),
            self.chi.or(d.chi).unwrap_or(1.0),
            self.eta.or(d.eta).unwrap_or(1.0),
            self.delta.or(d.delta).unwrap_or(0.0),
        ]
    }
}

#[derive(Args)]
struct SweepArgs {
    /// `name:min:max:count`, e.g. `r:0.05:1.5:201`.
    #[arg(long)]
    axis1: Option<String>,
    #[arg(long)]
    axis2: Option<String>,
    #[arg(long, value_enum)]
    observable: Option<ObservableArg>,
    #[arg(long, short)]
    k: Option<i64>,
    /// `name=value`, repeatable.
    #[arg(long = "fixed", value_name = "NAME=VALUE")]
    fixed: Vec<String>,
    #[arg(long)]
    log10: bool,
    /// Tie the second branch to the first (`s = r`, `eta = chi`).
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    wigner_points: Option<usize>,
    #[arg(long)]
    heatmap: bool,
    #[arg(long, default_value = "sweep")]
    stem: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObservableArg {
    GSingle,
    GCross,
    MeanPhoton,
    WignerMin,
}

impl From<ObservableArg> for Observable {
    fn from(o: ObservableArg) -> Self {
        match o {
            ObservableArg::GSingle => Observable::GSingle,
            ObservableArg::GCross => Observable::GCross,
            ObservableArg::MeanPhoton => Observable::MeanPhoton,
            ObservableArg::WignerMin => Observable::WignerMin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TrajectoryArg {
    Exponential,
    Affine,
    Mobius,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let exec = if cli.serial { Execution::Serial } else { Execution::default() };
    let out_dir = output_dir(cli.out_dir.as_deref().or(file.out_dir.as_deref()));
    match cli.command {
        Command::Coherence { state, observable, k } => {
            let k = k.or(file.state.k).unwrap_or(1);
            coherence(&state.resolve(&file.state), observable.into(), k)?;
        }
        Command::Sweep(args) => sweep(args, &file, &out_dir, exec)?,
        Command::Wigner { state, extent, points, stem } => {
            let extent = extent.or(file.wigner.extent).unwrap_or(DEFAULT_EXTENT);
            let points = points.or(file.wigner.points).unwrap_or(DEFAULT_POINTS);
            wigner(&state.resolve(&file.state), extent, points, &out_dir, &stem, exec)?;
        }
        Command::Ramsey { r, phi, phi2 } => ramsey(r, phi, phi2)?,
        Command::Schwarzian { trajectory, kappa, input, u, step } => {
            schwarzian_cmd(trajectory, kappa, input.as_deref(), u, step)?
        }
        Command::Verify { level, seed } => {
            let level = match level {
                LevelArg::Quick => VerifyLevel::Quick,
                LevelArg::Full => VerifyLevel::Full,
            };
            let report = verify_suite_with(level, &squeezing_polynomial, seed, exec);
            println!("{report}");
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn coherence(p: &[f64; 7], observable: Observable, k: i64) -> Result<()> {
    let cfg = JanusConfig::from_parts(p[0], p[1], p[2], p[3], p[4], p[5], p[6])?;
    let (value, kind, k) = match observable {
        Observable::GSingle => (g_single_tmjs(&cfg, k)?, MomentKind::Single, k),
        Observable::GCross => (g_cross_tmjs(&cfg, k)?, MomentKind::Cross, k),
        Observable::MeanPhoton => (mean_photon_tmjs(&cfg)?, MomentKind::Single, 1),
        Observable::WignerMin => bail!("wigner_min is a grid observable; use the `wigner` subcommand"),
    };
    let ker = kernel(&cfg, k, kind)?;
    let out = json!({
        "r": p[0], "theta": cfg.xi.theta(), "s": p[2], "phi": cfg.zeta.theta(),
        "chi": p[4], "eta": p[5], "delta": cfg.delta,
        "observable": observable.name(),
        "k": k,
        "value": value,
        "kernel": { "magnitude": ker.magnitude, "phase": ker.phase },
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn parse_axis(text: &str) -> Result<Axis> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        bail!("axis '{text}' must look like name:min:max:count");
    }
    let param: Param = parts[0].parse()?;
    Ok(Axis::new(param, parse_real(parts[1])?, parse_real(parts[2])?, parts[3].parse().context("axis count")?))
}

fn sweep(args: SweepArgs, file: &FileConfig, out_dir: &Path, exec: Execution) -> Result<()> {
    let mut spec = match (&file.sweep, &args.axis1, &args.axis2, args.observable) {
        (Some(s), ..) => s.clone(),
        (None, Some(a1), Some(a2), Some(obs)) => {
            janus_core::sweep::SweepSpec::new(parse_axis(a1)?, parse_axis(a2)?, obs.into(), file.state.k.unwrap_or(1))
        }
        _ => bail!("sweep needs --axis1, --axis2 and --observable (or a [sweep] table in the config file)"),
    };
    if let Some(a) = &args.axis1 {
        spec.axis1 = parse_axis(a)?;
    }
    if let Some(a) = &args.axis2 {
        spec.axis2 = parse_axis(a)?;
    }
    if let Some(o) = args.observable {
        spec.observable = o.into();
    }
    if let Some(k) = args.k {
        spec.k = k;
    }
    for f in &args.fixed {
        let (name, value) = f.split_once('=').with_context(|| format!("fixed parameter '{f}' must be name=value"))?;
        spec.fixed.insert(name.trim().parse()?, parse_real(value.trim())?);
    }
    spec.log10_output |= args.log10;
    spec.symmetric |= args.symmetric;
    if let Some(n) = args.wigner_points {
        spec.wigner_points = n;
    }
    let grid = run_sweep_with(&spec, exec)?;
    let record = write_sweep(&spec, &grid, out_dir, &args.stem, args.heatmap)?;
    let out = json!({
        "outputs": record.outputs,
        "cells": record.total_cells,
        "failed_cells": record.failed_cells,
        "sha256": record.data_sha256,
        "range": grid.finite_range(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn wigner(p: &[f64; 7], extent: f64, points: usize, out_dir: &Path, stem: &str, exec: Execution) -> Result<()> {
    let state = SingleModeJanus::from_parts(p[0], p[1], p[2], p[3], p[4], p[5], p[6])?;
    let w = wigner_grid_with(&state, extent, points, exec)?;
    let mut grid = SweepGrid::from(&w);
    for (name, v) in ["r", "theta", "s", "phi", "chi", "eta", "delta"].iter().zip(p) {
        grid.metadata.insert((*name).into(), format!("{v:.16e}"));
    }
    grid.metadata.insert("extent".into(), format!("{extent:.16e}"));
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let ppm_path = out_dir.join(format!("{stem}.ppm"));
    write_atomic(&csv_path, grid.to_csv().as_bytes())?;
    render_heatmap(&grid, &ppm_path)?;
    let centre = w.at(points / 2, points / 2);
    let out = json!({
        "outputs": [csv_path, ppm_path],
        "min": w.min_value,
        "max": w.max_value(),
        "negative_area": w.negative_area,
        "integral": w.integral(),
        "pi_w_origin": PI * centre,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn complex(re: f64, im: f64) -> serde_json::Value {
    json!({ "re": re, "im": im })
}

fn ramsey(r: f64, phi: f64, phi2: Option<f64>) -> Result<()> {
    let m = ramsey_sequence(r, phi);
    let mut out = json!({
        "r": r,
        "phi": phi,
        "alpha": complex(m.alpha.re, m.alpha.im),
        "beta": complex(m.beta.re, m.beta.im),
        "determinant": m.determinant(),
    });
    if let Some(phi2) = phi2 {
        let pair = SchmidtModePair::from_maps(&m, &ramsey_sequence(r, phi2))?;
        let z = pair.z();
        out["schmidt_pair"] = json!({
            "r1": pair.r1, "theta1": pair.theta1, "r2": pair.r2, "theta2": pair.theta2,
            "z": complex(z.re, z.im),
        });
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn read_trajectory(path: &Path) -> Result<MirrorTrajectory> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (mut u, mut p) = (Vec::new(), Vec::new());
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',').map(str::trim);
        let (a, b) = (cols.next(), cols.next());
        match (a.map(str::parse::<f64>), b.map(str::parse::<f64>)) {
            (Some(Ok(a)), Some(Ok(b))) => {
                u.push(a);
                p.push(b);
            }
            // a non-numeric first row is a column header
            _ if u.is_empty() && i == 0 => continue,
            _ => bail!("{}:{}: expected `u,p`", path.display(), i + 1),
        }
    }
    Ok(MirrorTrajectory::sampled(u, p)?)
}

fn schwarzian_cmd(kind: TrajectoryArg, kappa: f64, input: Option<&Path>, u: f64, step: f64) -> Result<()> {
    let traj = match input {
        Some(path) => read_trajectory(path)?,
        None => match kind {
            TrajectoryArg::Exponential => {
                if kappa.is_nan() || kappa <= 0.0 {
                    bail!("kappa must be positive");
                }
                MirrorTrajectory::function(move |u| -(-kappa * u).exp() / kappa)
            }
            TrajectoryArg::Affine => MirrorTrajectory::function(|u| 2.0 * u + 1.0),
            TrajectoryArg::Mobius => MirrorTrajectory::function(|u| (2.0 * u + 1.0) / (0.5 * u + 3.0)),
        }
        .with_step(step),
    };
    let out = json!({ "u": u, "schwarzian": schwarzian(&traj, u)?, "flux": schwarzian_flux(&traj, u)? });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}
