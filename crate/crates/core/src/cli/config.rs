//! `key = value` run configuration with `[section]` headers.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_space::SmoothingWidths;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Well,
    Step,
    HhgClassical,
    HhgQuantum,
}

impl Scenario {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "well" => Ok(Scenario::Well),
            "step" => Ok(Scenario::Step),
            "hhg_classical" | "hhg-classical" => Ok(Scenario::HhgClassical),
            "hhg_quantum" | "hhg-quantum" => Ok(Scenario::HhgQuantum),
            _ => Err(Error::Config(format!("unknown scenario {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WellParams {
    pub n: u32,
    pub half_width: f64,
    pub mass: f64,
    pub hbar: f64,
    pub q_extent: f64,
    pub q_points: usize,
    pub p_points: usize,
    /// Display window `[q_lo, q_hi, p_lo, p_hi]`.
    pub view: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepParams {
    pub v0: f64,
    pub energy: f64,
    pub mass: f64,
    pub hbar: f64,
    pub spacing: f64,
    pub p_points: usize,
    pub view: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    FlatTop,
    Gaussian,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HhgParams {
    pub e0: Option<f64>,
    pub intensity_w_cm2: Option<f64>,
    pub omega_l: Option<f64>,
    pub wavelength_nm: Option<f64>,
    pub envelope: EnvelopeKind,
    pub total_cycles: f64,
    pub ramp_cycles: f64,
    pub fwhm_fs: f64,
    pub beta: Option<f64>,
    pub beta_sq: f64,
    pub ip: Option<f64>,
    pub x_extent: f64,
    pub x_points: usize,
    pub dt: f64,
    pub absorber_fraction: f64,
    pub record_stride: usize,
    pub births_per_cycle: usize,
    pub max_returns: usize,
    pub t_stride: usize,
    pub lag_period: usize,
    pub omega_max_orders: f64,
    /// Display window in optical cycles and harmonic orders.
    pub view: Option<[f64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputParams {
    pub dir: PathBuf,
    pub csv: bool,
    pub binary: bool,
    pub svg: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub well: WellParams,
    pub step: StepParams,
    pub hhg: HhgParams,
    /// Width pairs as given, before deduplication.
    pub widths: Vec<(f64, f64)>,
    /// First widths of minimum-uncertainty pairs.
    pub husimi: Vec<f64>,
    /// Sweep grid; every `sigma1` is paired with every `sigma2`.
    pub sweep_sigma1: Vec<f64>,
    pub sweep_sigma2: Vec<f64>,
    /// Island-count level as a fraction of the field maximum.
    pub island_level: f64,
    pub output: OutputParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: Scenario::Well,
            well: WellParams {
                n: 5,
                half_width: 10.0,
                mass: 1.0,
                hbar: 1.0,
                q_extent: 30.0,
                q_points: 2049,
                p_points: 2049,
                view: [-12.0, 12.0, -3.0, 3.0],
            },
            step: StepParams {
                v0: 1.0,
                energy: 0.5,
                mass: 1.0,
                hbar: 1.0,
                spacing: 0.1,
                p_points: 1025,
                view: [-30.0, 8.0, -3.0, 3.0],
            },
            hhg: HhgParams {
                e0: None,
                intensity_w_cm2: Some(3e14),
                omega_l: None,
                wavelength_nm: Some(800.0),
                envelope: EnvelopeKind::FlatTop,
                total_cycles: 8.0,
                ramp_cycles: 2.0,
                fwhm_fs: 160.0,
                beta: None,
                beta_sq: 0.67,
                ip: None,
                x_extent: 200.0,
                x_points: 2048,
                dt: 0.05,
                absorber_fraction: 0.1,
                record_stride: 1,
                births_per_cycle: 2000,
                max_returns: 4,
                t_stride: 8,
                lag_period: 8192,
                omega_max_orders: 70.0,
                view: None,
            },
            widths: Vec::new(),
            husimi: Vec::new(),
            sweep_sigma1: Vec::new(),
            sweep_sigma2: Vec::new(),
            island_level: 0.1,
            output: OutputParams {
                dir: PathBuf::from("wigsmooth-out"),
                csv: true,
                binary: false,
                svg: true,
            },
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?}")))
}

fn positive(key: &str, v: &str) -> Result<f64> {
    let x: f64 = num(key, v)?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Config(format!("{key} must be positive, got {v}")))
    }
}

fn count(key: &str, v: &str, min: usize) -> Result<usize> {
    let n: usize = num(key, v)?;
    if n < min {
        return Err(Error::Config(format!(
            "{key} must be at least {min}, got {n}"
        )));
    }
    Ok(n)
}

fn list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| positive(key, s))
        .collect()
}

fn pairs(key: &str, v: &str) -> Result<Vec<(f64, f64)>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (a, b) = s.split_once(':').ok_or_else(|| {
                Error::Config(format!("{key}: expected sigma1:sigma2, got {s:?}"))
            })?;
            Ok((positive(key, a)?, positive(key, b)?))
        })
        .collect()
}

fn view(key: &str, v: &str) -> Result<[f64; 4]> {
    let x: Vec<f64> = v.split(',').map(|s| num(key, s)).collect::<Result<_>>()?;
    match x[..] {
        [a, b, c, d] if a < b && c < d => Ok([a, b, c, d]),
        _ => Err(Error::Config(format!(
            "{key}: expected lo1,hi1,lo2,hi2 with lo < hi, got {v:?}"
        ))),
    }
}

fn flag(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "{key}: expected true or false, got {v:?}"
        ))),
    }
}

impl RunConfig {
    /// Parses configuration text on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut section = String::new();
        let mut seen = BTreeSet::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                section = name
                    .strip_suffix(']')
                    .ok_or_else(|| {
                        Error::Config(format!("line {}: unterminated section header", k + 1))
                    })?
                    .trim()
                    .to_string();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", k + 1)))?;
            let full = if section.is_empty() {
                key.trim().to_string()
            } else {
                format!("{section}.{}", key.trim())
            };
            if !seen.insert(full.clone()) {
                return Err(Error::Config(format!("line {}: {full} given twice", k + 1)));
            }
            self.set(&full, value.trim())?;
        }
        Ok(())
    }

    /// Assigns one dotted key such as `well.n` or `smoothing.widths`.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        let v = v.trim().trim_matches('"');
        let (w, s, h) = (&mut self.well, &mut self.step, &mut self.hhg);
        match key {
            "scenario" => self.scenario = Scenario::parse(v)?,
            "well.n" => {
                w.n = num(key, v)?;
                if w.n == 0 {
                    return Err(Error::Config("well.n starts at 1".into()));
                }
            }
            "well.half_width" => w.half_width = positive(key, v)?,
            "well.mass" => w.mass = positive(key, v)?,
            "well.hbar" => w.hbar = positive(key, v)?,
            "well.q_extent" => w.q_extent = positive(key, v)?,
            "well.q_points" => w.q_points = count(key, v, 3)?,
            "well.p_points" => w.p_points = count(key, v, 3)?,
            "well.view" => w.view = view(key, v)?,
            "step.v0" => s.v0 = positive(key, v)?,
            "step.energy" => s.energy = positive(key, v)?,
            "step.mass" => s.mass = positive(key, v)?,
            "step.hbar" => s.hbar = positive(key, v)?,
            "step.spacing" => s.spacing = positive(key, v)?,
            "step.p_points" => s.p_points = count(key, v, 3)?,
            "step.view" => s.view = view(key, v)?,
            "hhg.e0" => {
                h.e0 = Some(positive(key, v)?);
                h.intensity_w_cm2 = None;
            }
            "hhg.intensity_w_cm2" => {
                h.intensity_w_cm2 = Some(positive(key, v)?);
                h.e0 = None;
            }
            "hhg.omega_l" => {
                h.omega_l = Some(positive(key, v)?);
                h.wavelength_nm = None;
            }
            "hhg.wavelength_nm" => {
                h.wavelength_nm = Some(positive(key, v)?);
                h.omega_l = None;
            }
            "hhg.envelope" => {
                h.envelope = match v {
                    "flat_top" => EnvelopeKind::FlatTop,
                    "gaussian" => EnvelopeKind::Gaussian,
                    _ => {
                        return Err(Error::Config(format!(
                            "{key}: expected flat_top or gaussian, got {v:?}"
                        )))
                    }
                }
            }
            "hhg.total_cycles" => h.total_cycles = positive(key, v)?,
            "hhg.ramp_cycles" => {
                h.ramp_cycles = num(key, v)?;
                if !(h.ramp_cycles >= 0.0) {
                    return Err(Error::Config(format!("{key} must be non-negative")));
                }
            }
            "hhg.fwhm_fs" => h.fwhm_fs = positive(key, v)?,
            "hhg.beta" => h.beta = Some(positive(key, v)?),
            "hhg.beta_sq" => {
                h.beta_sq = positive(key, v)?;
                h.beta = None;
            }
            "hhg.ip" => {
                h.ip = if v == "auto" {
                    None
                } else {
                    Some(positive(key, v)?)
                }
            }
            "hhg.x_extent" => h.x_extent = positive(key, v)?,
            "hhg.x_points" => h.x_points = count(key, v, 3)?,
            "hhg.dt" => h.dt = positive(key, v)?,
            "hhg.absorber_fraction" => {
                h.absorber_fraction = num(key, v)?;
                if !(0.0..0.25).contains(&h.absorber_fraction) {
                    return Err(Error::Config(format!("{key} must lie in [0, 0.25)")));
                }
            }
            "hhg.record_stride" => h.record_stride = count(key, v, 1)?,
            "hhg.births_per_cycle" => h.births_per_cycle = count(key, v, 2)?,
            "hhg.max_returns" => h.max_returns = count(key, v, 1)?,
            "hhg.t_stride" => h.t_stride = count(key, v, 1)?,
            "hhg.lag_period" => h.lag_period = count(key, v, 8)?,
            "hhg.omega_max_orders" => h.omega_max_orders = positive(key, v)?,
            "hhg.view" => h.view = Some(view(key, v)?),
            "smoothing.widths" => self.widths = pairs(key, v)?,
            "smoothing.husimi" => self.husimi = list(key, v)?,
            "smoothing.island_level" => {
                self.island_level = num(key, v)?;
                if !(self.island_level > 0.0 && self.island_level < 1.0) {
                    return Err(Error::Config(format!("{key} must lie in (0, 1)")));
                }
            }
            "sweep.sigma1" => self.sweep_sigma1 = list(key, v)?,
            "sweep.sigma2" => self.sweep_sigma2 = list(key, v)?,
            "output.dir" => self.output.dir = PathBuf::from(v),
            "output.formats" => {
                let f: BTreeSet<&str> = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                if let Some(bad) = f.iter().find(|x| !["csv", "binary", "svg"].contains(x)) {
                    return Err(Error::Config(format!("{key}: unknown format {bad:?}")));
                }
                self.output.csv = f.contains("csv");
                self.output.binary = f.contains("binary");
                self.output.svg = f.contains("svg");
            }
            "output.csv" => self.output.csv = flag(key, v)?,
            "output.binary" => self.output.binary = flag(key, v)?,
            "output.svg" => self.output.svg = flag(key, v)?,
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn planck_scale(&self) -> f64 {
        match self.scenario {
            Scenario::Well => self.well.hbar,
            Scenario::Step => self.step.hbar,
            _ => 1.0,
        }
    }

    /// Explicit pairs, then minimum-uncertainty pairs, then the sweep grid,
    /// in order of appearance.
    pub fn width_requests(&self) -> Result<Vec<SmoothingWidths>> {
        let planck = self.planck_scale();
        let mut out = Vec::new();
        for &(a, b) in &self.widths {
            out.push(SmoothingWidths::new(a, b, planck).map_err(|e| Error::Config(e.to_string()))?);
        }
        for &a in &self.husimi {
            out.push(SmoothingWidths::husimi(a, planck).map_err(|e| Error::Config(e.to_string()))?);
        }
        for &a in &self.sweep_sigma1 {
            for &b in &self.sweep_sigma2 {
                out.push(
                    SmoothingWidths::new(a, b, planck).map_err(|e| Error::Config(e.to_string()))?,
                );
            }
        }
        Ok(out)
    }
}

/// Drops repeated pairs, keeping the first occurrence; returns the kept pairs
/// and the indices of the dropped ones.
pub fn dedup_widths(widths: &[SmoothingWidths]) -> (Vec<SmoothingWidths>, Vec<usize>) {
    let mut kept: Vec<SmoothingWidths> = Vec::new();
    let mut dropped = Vec::new();
    for (k, w) in widths.iter().enumerate() {
        if kept
            .iter()
            .any(|u| u.sigma1 == w.sigma1 && u.sigma2 == w.sigma2)
        {
            dropped.push(k);
        } else {
            kept.push(*w);
        }
    }
    (kept, dropped)
}
