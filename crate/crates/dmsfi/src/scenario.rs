//! Scenario configuration (TOML with unit-suffixed keys), sweep
//! orchestration, and deterministic CSV/JSON emission.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::MoleculeModel;
use crate::error::{Error, Result};
use crate::kinematics;
use crate::laser::{Envelope, LaserField};
use crate::propagator::{
    self, ModelVariant, PhaseVariant, PropagationOptions, SimulationResult,
};
use crate::rates::{self, RateKind};
use crate::units;
use crate::wforacle;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserConfig {
    pub wavelength_nm: f64,
    #[serde(rename = "intensity_W_cm2")]
    pub intensity_w_cm2: f64,
    /// Pulse duration as the intensity-profile FWHM (lab convention).
    #[serde(default)]
    pub fwhm_fs: Option<f64>,
    #[serde(default = "default_envelope")]
    pub envelope: Envelope,
    #[serde(default)]
    pub cep_rad: f64,
}

fn default_envelope() -> Envelope {
    Envelope::Gaussian
}

impl LaserConfig {
    pub fn build(&self) -> Result<LaserField> {
        match self.envelope {
            Envelope::Cw => LaserField::cw(self.wavelength_nm, self.intensity_w_cm2, self.cep_rad),
            Envelope::Gaussian => LaserField::gaussian_intensity_fwhm(
                self.wavelength_nm,
                self.intensity_w_cm2,
                self.fwhm_fs
                    .ok_or_else(|| Error::Config("laser.fwhm_fs required for gaussian".into()))?,
                self.cep_rad,
            ),
            Envelope::CosineSquare => LaserField::new(
                self.wavelength_nm,
                self.intensity_w_cm2,
                Envelope::CosineSquare,
                self.fwhm_fs
                    .ok_or_else(|| Error::Config("laser.fwhm_fs required for cos^2".into()))?,
                self.cep_rad,
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoleculeConfig {
    /// Bundled molecule name ("h", "n2", "co2") ...
    #[serde(default)]
    pub name: Option<String>,
    /// ... or a path to a molecule file in the same schema.
    #[serde(default)]
    pub file: Option<PathBuf>,
}

impl MoleculeConfig {
    pub fn load(&self) -> Result<MoleculeModel> {
        match (&self.name, &self.file) {
            (Some(n), None) => MoleculeModel::builtin(n),
            (None, Some(f)) => MoleculeModel::from_toml_str(&fs::read_to_string(f)?),
            _ => Err(Error::Config(
                "molecule: set exactly one of `name` or `file`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(default = "default_variant")]
    pub variant: ModelVariant,
    #[serde(default = "default_rate")]
    pub rate: RateKind,
    #[serde(default = "default_phase")]
    pub phase: PhaseVariant,
    /// Alignment angles between molecular axis and polarization, degrees.
    #[serde(default = "default_orientation")]
    pub orientation_deg: Vec<f64>,
}

fn default_variant() -> ModelVariant {
    ModelVariant::Tic1
}
fn default_rate() -> RateKind {
    RateKind::Na
}
fn default_phase() -> PhaseVariant {
    PhaseVariant::ThisWork
}
fn default_orientation() -> Vec<f64> {
    vec![0.0]
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            variant: default_variant(),
            rate: default_rate(),
            phase: default_phase(),
            orientation_deg: default_orientation(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    Wavelength,
    Intensity,
    Angle,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub laser: LaserConfig,
    pub molecule: MoleculeConfig,
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn options(&self) -> PropagationOptions {
        PropagationOptions {
            variant: self.model.variant,
            rate: self.model.rate,
            phase: self.model.phase,
            ..Default::default()
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.12e}")
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

/// Run manifest: enough to reproduce the run bit for bit.
#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    crate_version: &'static str,
    resolved_config: &'a Config,
    outputs: Vec<String>,
}

fn write_manifest(dir: &Path, command: &str, cfg: &Config, outputs: &[PathBuf]) -> Result<()> {
    let manifest = Manifest {
        command,
        crate_version: env!("CARGO_PKG_VERSION"),
        resolved_config: cfg,
        outputs: outputs
            .iter()
            .map(|p| p.file_name().unwrap_or_default().to_string_lossy().into_owned())
            .collect(),
    };
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Config(format!("manifest serialization: {e}")))?;
    write_file(dir, "manifest.json", &text)?;
    Ok(())
}

/// `rate` subcommand: per-channel nonadiabatic and ADK rates on the 10-as grid.
pub fn run_rate(cfg: &Config, channel: Option<&str>, out_dir: &Path) -> Result<PathBuf> {
    let field = cfg.laser.build()?;
    let molecule = cfg.molecule.load()?;
    let theta = cfg.model.orientation_deg[0].to_radians();
    let idx = match channel {
        Some(label) => molecule
            .index_of(label)
            .ok_or_else(|| Error::Config(format!("unknown channel {label}")))?,
        None => 0,
    };
    let ch = &molecule.channels[idx];
    let (t0, t1) = field.window();
    let dt = 10.0 * units::AS_AU;
    let nsteps = ((t1 - t0) / dt) as usize;
    let mut csv = String::from("t_au,F,w_na,w_adk\n");
    for i in 0..=nsteps {
        let t = t0 + i as f64 * dt;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt(t),
            fmt(field.field_at(t)),
            fmt(rates::subcycle_rate(ch, &field, theta, t)),
            fmt(rates::adk_rate(ch, &field, theta, t)),
        ));
    }
    let path = write_file(out_dir, "rate.csv", &csv)?;
    write_manifest(out_dir, "rate", cfg, std::slice::from_ref(&path))?;
    Ok(path)
}

/// `yield` subcommand: NA and ADK pulse yields over an intensity sweep.
pub fn run_yield(cfg: &Config, out_dir: &Path) -> Result<PathBuf> {
    let molecule = cfg.molecule.load()?;
    let theta = cfg.model.orientation_deg[0].to_radians();
    let intensities: Vec<f64> = match &cfg.sweep {
        Some(s) if s.variable == SweepVariable::Intensity => s.values.clone(),
        _ => {
            let base = cfg.laser.intensity_w_cm2;
            (0..13)
                .map(|i| base * 10f64.powf(-0.6 + 1.2 * i as f64 / 12.0))
                .collect()
        }
    };
    let ch = &molecule.channels[0];
    let mut csv = String::from("intensity,P_na,P_adk\n");
    for &intensity in &intensities {
        let mut lc = cfg.laser.clone();
        lc.intensity_w_cm2 = intensity;
        let field = lc.build()?;
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt(intensity),
            fmt(rates::ionization_yield(ch, &field, theta, RateKind::Na)?),
            fmt(rates::ionization_yield(ch, &field, theta, RateKind::Adk)?),
        ));
    }
    let path = write_file(out_dir, "yield.csv", &csv)?;
    write_manifest(out_dir, "yield", cfg, std::slice::from_ref(&path))?;
    Ok(path)
}

/// `kinematics` subcommand: saddle kinematics and actions for figure
/// reproduction. Uses the first channel (and the second for the birth-delay
/// ratio when present).
pub fn run_kinematics(cfg: &Config, out_dir: &Path) -> Result<PathBuf> {
    let field = LaserField::cw(
        cfg.laser.wavelength_nm,
        cfg.laser.intensity_w_cm2,
        cfg.laser.cep_rad,
    )?;
    let molecule = cfg.molecule.load()?;
    let ch1 = &molecule.channels[0];
    let ch2 = molecule.channels.get(1);
    let kappa = ch1.kappa();
    let mut csv = String::from("t_au,p_z,tau,re_s,im_s,delay_ratio\n");
    let nsteps = 200;
    for i in 0..=nsteps {
        let phase = -1.45 + 2.9 * i as f64 / nsteps as f64;
        let t = (phase - field.cep) / field.omega;
        let s = kinematics::saddle(&field, kappa, 0.0, t)?;
        let re_s = kinematics::action_real(&field, ch1.e_ip, 0.0, s.p_z, t, t)?;
        let im_s = kinematics::action_imag(&field, ch1.e_ip, 0.0, t)?;
        let delay = match ch2 {
            Some(c2) => kinematics::birth_delay_ratio(&field, ch1.e_ip, c2.e_ip, 0.0, t)?,
            None => 0.0,
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt(t),
            fmt(s.p_z),
            fmt(s.tau_tunnel),
            fmt(re_s),
            fmt(im_s),
            fmt(delay),
        ));
    }
    let path = write_file(out_dir, "kinematics.csv", &csv)?;
    write_manifest(out_dir, "kinematics", cfg, std::slice::from_ref(&path))?;
    Ok(path)
}

fn timeseries_csv(result: &SimulationResult, field: &LaserField) -> String {
    let n = result.labels.len();
    let mut header = String::from("t_fs,F_au,rho0");
    for i in 0..n {
        for j in i..n {
            header.push_str(&format!(",re_{}_{}", result.labels[i], result.labels[j]));
            header.push_str(&format!(",im_{}_{}", result.labels[i], result.labels[j]));
        }
    }
    header.push('\n');
    let mut csv = header;
    for (k, &t) in result.times.iter().enumerate() {
        csv.push_str(&fmt(units::au_to_fs(t)));
        csv.push(',');
        csv.push_str(&fmt(field.field_at(t)));
        csv.push(',');
        csv.push_str(&fmt(result.rho0[k]));
        for i in 0..n {
            for j in i..n {
                let v = result.rho[k][(i, j)];
                csv.push(',');
                csv.push_str(&fmt(v.re));
                csv.push(',');
                csv.push_str(&fmt(v.im));
            }
        }
        csv.push('\n');
    }
    csv
}

/// `propagate` subcommand: one DM-SFI propagation per configured
/// orientation; time-series CSV plus JSON summary.
pub fn run_propagate(cfg: &Config, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let field = cfg.laser.build()?;
    let molecule = cfg.molecule.load()?;
    let opts = cfg.options();
    let mut outputs = Vec::new();
    for &deg in &cfg.model.orientation_deg {
        let theta = deg.to_radians();
        let result = propagator::propagate(&molecule, &field, theta, &opts)?;
        let tag = format!("theta{deg}");
        outputs.push(write_file(
            out_dir,
            &format!("timeseries_{tag}.csv"),
            &timeseries_csv(&result, &field),
        )?);
        let summary = serde_json::to_string_pretty(&result.summary)
            .map_err(|e| Error::Config(format!("summary serialization: {e}")))?;
        outputs.push(write_file(out_dir, &format!("summary_{tag}.json"), &summary)?);
    }
    write_manifest(out_dir, "propagate", cfg, &outputs)?;
    Ok(outputs)
}

/// One row of a sweep result.
#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub final_rho0: f64,
    pub total_yield: f64,
    pub grouped_populations: Vec<(String, f64)>,
    /// Normalized C-B population difference when both labels exist.
    pub norm_diff_cb: Option<f64>,
    pub error: Option<String>,
}

/// `scan` subcommand: one propagation per sweep value, executed in parallel
/// with stable row order; per-point failures recorded, run continues.
pub fn run_scan(cfg: &Config, out_dir: &Path) -> Result<PathBuf> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("scan requires a [sweep] section".into()))?;
    let molecule = cfg.molecule.load()?;
    let opts = cfg.options();
    let base_theta = cfg.model.orientation_deg[0].to_radians();

    let rows: Vec<SweepRow> = sweep
        .values
        .par_iter()
        .map(|&value| {
            let run = || -> Result<SweepRow> {
                let mut lc = cfg.laser.clone();
                let mut theta = base_theta;
                match sweep.variable {
                    SweepVariable::Wavelength => lc.wavelength_nm = value,
                    SweepVariable::Intensity => lc.intensity_w_cm2 = value,
                    SweepVariable::Angle => theta = value.to_radians(),
                }
                let field = lc.build()?;
                let result = propagator::propagate(&molecule, &field, theta, &opts)?;
                let groups: Vec<(String, f64)> = result
                    .summary
                    .grouped_populations
                    .iter()
                    .map(|(k, v)| (k.clone(), *v))
                    .collect();
                let get = |label: &str| {
                    groups
                        .iter()
                        .find(|(k, _)| k == label)
                        .map(|(_, v)| *v)
                };
                let norm_diff_cb = match (get("C"), get("B")) {
                    (Some(c), Some(b)) if c + b > 0.0 => {
                        Some((c - b) / result.summary.total_yield)
                    }
                    _ => None,
                };
                Ok(SweepRow {
                    value,
                    final_rho0: result.summary.final_rho0,
                    total_yield: result.summary.total_yield,
                    grouped_populations: groups,
                    norm_diff_cb,
                    error: None,
                })
            };
            run().unwrap_or_else(|e| SweepRow {
                value,
                final_rho0: f64::NAN,
                total_yield: f64::NAN,
                grouped_populations: Vec::new(),
                norm_diff_cb: None,
                error: Some(e.to_string()),
            })
        })
        .collect();

    let group_names: Vec<String> = molecule
        .population_groups()
        .into_iter()
        .map(|(name, _)| name)
        .collect();
    let mut csv = String::from("value,rho0,yield");
    for g in &group_names {
        csv.push_str(&format!(",P_{g}"));
    }
    csv.push_str(",norm_diff_CB,error\n");
    for row in &rows {
        csv.push_str(&fmt(row.value));
        csv.push(',');
        csv.push_str(&fmt(row.final_rho0));
        csv.push(',');
        csv.push_str(&fmt(row.total_yield));
        for g in &group_names {
            let v = row
                .grouped_populations
                .iter()
                .find(|(k, _)| k == g)
                .map(|(_, v)| *v)
                .unwrap_or(f64::NAN);
            csv.push(',');
            csv.push_str(&fmt(v));
        }
        csv.push(',');
        match row.norm_diff_cb {
            Some(v) => csv.push_str(&fmt(v)),
            None => csv.push_str("NA"),
        }
        csv.push(',');
        csv.push_str(row.error.as_deref().unwrap_or(""));
        csv.push('\n');
    }
    let path = write_file(out_dir, "scan.csv", &csv)?;
    write_manifest(out_dir, "scan", cfg, std::slice::from_ref(&path))?;
    Ok(path)
}

/// `verify` subcommand: wave-function oracle vs density-matrix propagation;
/// prints the birth-grid convergence table and returns (grids, distances).
pub fn run_verify(cfg: &Config, out_dir: &Path) -> Result<Vec<(usize, f64)>> {
    let field = cfg.laser.build()?;
    let molecule = cfg.molecule.load()?;
    let opts = cfg.options();
    let theta = cfg.model.orientation_deg[0].to_radians();
    let result = propagator::propagate(&molecule, &field, theta, &opts)?;
    let rho_dm = result.rho.last().expect("samples").clone();
    let mut table = Vec::new();
    for n_steps in [500usize, 1000, 2000, 4000] {
        let (rho_wf, _) = wforacle::reconstruct_rho(
            &molecule, &field, theta, opts.variant, opts.rate, n_steps,
        )?;
        table.push((n_steps, wforacle::trace_distance(&rho_dm, &rho_wf)));
    }
    let mut text = String::from("birth_steps,trace_distance,order\n");
    for (i, (nsteps, d)) in table.iter().enumerate() {
        let order = if i > 0 {
            (table[i - 1].1 / d).log2()
        } else {
            f64::NAN
        };
        text.push_str(&format!("{nsteps},{},{}\n", fmt(*d), fmt(order)));
    }
    let path = write_file(out_dir, "verify.csv", &text)?;
    write_manifest(out_dir, "verify", cfg, std::slice::from_ref(&path))?;
    Ok(table)
}
