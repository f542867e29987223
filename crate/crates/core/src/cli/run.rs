//! Scenario execution and artifact writing.

use std::f64::consts::{PI, TAU};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{dedup_widths, EnvelopeKind, RunConfig, Scenario};
use crate::classical::{emission_map, EmissionPoint};
use crate::error::{Error, Result};
use crate::io;
use crate::phase_space::{
    contour_extract, default_levels, gaussian_smooth, island_count, Axis, DistributionField,
    Regime, SmoothingWidths,
};
use crate::stationary::{
    square_well_wavefunction, tapered_step_wavefunction, wigner_transform, SquareWellSpec,
    StepPotentialSpec,
};
use crate::tdse::{self, units, PowerSpectrum, PropagationConfig, PulseSpec, SoftCoreSpec};
use crate::time_frequency::{wigner_ville, Signal};

/// Statistics of one smoothed field, one summary row.
#[derive(Debug, Clone, Serialize)]
pub struct WidthSummary {
    pub index: usize,
    pub sigma1: f64,
    pub sigma2: f64,
    pub product: f64,
    pub regime: Regime,
    pub min: f64,
    pub max: f64,
    pub island_count: usize,
    pub mass: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub output_dir: PathBuf,
    pub warnings: Vec<String>,
    pub widths: Vec<WidthSummary>,
}

/// Unsmoothed field of a scenario plus everything needed to present it.
struct Base {
    field: DistributionField,
    labels: (&'static str, &'static str),
    /// Display units per computational unit along each axis.
    scale: (f64, f64),
    view: [f64; 4],
    details: Value,
    warnings: Vec<String>,
}

pub(crate) fn pulse_from(cfg: &RunConfig) -> Result<(PulseSpec, Value)> {
    let h = &cfg.hhg;
    let e0 = match (h.e0, h.intensity_w_cm2) {
        (Some(e), _) => e,
        (None, Some(i)) => units::intensity_to_field(i)?,
        (None, None) => return Err(Error::Config("hhg needs e0 or intensity_w_cm2".into())),
    };
    let omega = match (h.omega_l, h.wavelength_nm) {
        (Some(w), _) => w,
        (None, Some(l)) => units::wavelength_to_omega(l)?,
        (None, None) => return Err(Error::Config("hhg needs omega_l or wavelength_nm".into())),
    };
    let (pulse, fwhm_au) = match h.envelope {
        EnvelopeKind::FlatTop => (
            PulseSpec::flat_top(e0, omega, h.total_cycles, h.ramp_cycles)
                .map_err(|e| Error::Config(e.to_string()))?,
            None,
        ),
        EnvelopeKind::Gaussian => {
            let fwhm = units::femtoseconds_to_au(h.fwhm_fs)?;
            let mut p = PulseSpec::gaussian(e0, omega, fwhm, 0.0)
                .map_err(|e| Error::Config(e.to_string()))?;
            let (start, _) = p.support().expect("gaussian support");
            p.t_center = -start;
            (p, Some(fwhm))
        }
    };
    let conversions = json!({
        "e0_au": e0,
        "omega_l_au": omega,
        "intensity_w_cm2": h.intensity_w_cm2,
        "wavelength_nm": h.wavelength_nm,
        "fwhm_fs": if fwhm_au.is_some() { Some(h.fwhm_fs) } else { None },
        "fwhm_au": fwhm_au,
        "period_au": pulse.period(),
        "ponderomotive_energy_au": pulse.ponderomotive_energy(),
        "constants": {
            "hartree_nm": units::HARTREE_NM,
            "atomic_intensity_w_cm2": units::ATOMIC_INTENSITY,
            "atomic_time_fs": units::ATOMIC_TIME_FS,
        },
    });
    Ok((pulse, conversions))
}

pub(crate) fn soft_core_from(cfg: &RunConfig) -> Result<SoftCoreSpec> {
    match cfg.hhg.beta {
        Some(b) => SoftCoreSpec::new(b),
        None => SoftCoreSpec::from_softening(cfg.hhg.beta_sq),
    }
    .map_err(|e| Error::Config(e.to_string()))
}

fn hhg_axis(cfg: &RunConfig) -> Result<Axis> {
    Axis::symmetric(cfg.hhg.x_extent, cfg.hhg.x_points).map_err(|e| Error::Config(e.to_string()))
}

fn well_base(cfg: &RunConfig) -> Result<Base> {
    let w = &cfg.well;
    let spec = SquareWellSpec::new(w.half_width, w.mass, w.hbar, w.n)
        .map_err(|e| Error::Config(e.to_string()))?;
    let q = Axis::symmetric(w.q_extent, w.q_points).map_err(|e| Error::Config(e.to_string()))?;
    let psi = square_well_wavefunction(&spec, q).map_err(|e| Error::Config(e.to_string()))?;
    let p = q.lag_conjugate(w.hbar, w.p_points)?;
    let field = wigner_transform(&psi, p, w.hbar)?;
    let m = field.moments()?;
    Ok(Base {
        labels: ("q", "p"),
        scale: (1.0, 1.0),
        view: w.view,
        details: json!({
            "energy": spec.energy(),
            "q_axis": q,
            "p_axis": p,
            "moments": m,
            "exact_delta_q": spec.delta_q(),
            "exact_delta_p": spec.delta_p(),
        }),
        warnings: Vec::new(),
        field,
    })
}

fn step_base(cfg: &RunConfig) -> Result<Base> {
    let s = &cfg.step;
    let spec = StepPotentialSpec::new(s.v0, s.energy, s.mass, s.hbar)
        .map_err(|e| Error::Config(e.to_string()))?;
    let psi = tapered_step_wavefunction(&spec, s.spacing)?;
    let q = *psi.axis();
    let p = q.lag_conjugate(s.hbar, s.p_points)?;
    let field = wigner_transform(&psi, p, s.hbar)?;
    Ok(Base {
        labels: ("q", "p"),
        scale: (1.0, 1.0),
        view: s.view,
        details: json!({
            "k": spec.k(),
            "kappa": spec.kappa(),
            "reflection": [spec.reflection().re, spec.reflection().im],
            "transmission": [spec.transmission().re, spec.transmission().im],
            "q_axis": q,
            "p_axis": p,
            "taper_start": 0.5 * q.min(),
            "taper_width": -q.min() / 16.0,
        }),
        warnings: Vec::new(),
        field,
    })
}

/// Propagates the ground state through the configured pulse.
pub(crate) fn quantum_record(cfg: &RunConfig) -> Result<(tdse::DipoleRecord, f64, Value)> {
    let (pulse, conversions) = pulse_from(cfg)?;
    let potential = soft_core_from(cfg)?;
    let axis = hhg_axis(cfg)?;
    let (psi0, energy) = tdse::ground_state(&potential, axis)?;
    let (t0, t1) = pulse
        .support()
        .ok_or_else(|| Error::Config("pulse has no finite support".into()))?;
    let pc = PropagationConfig::new(
        axis,
        cfg.hhg.dt,
        t0,
        t1,
        cfg.hhg.absorber_fraction * axis.span(),
        cfg.hhg.record_stride,
    )
    .map_err(|e| Error::Config(e.to_string()))?;
    let record = tdse::propagate(&psi0, &potential, &pulse, &pc)?;
    let details = json!({
        "pulse": pulse,
        "conversions": conversions,
        "potential": potential,
        "ground_state_energy": energy,
        "propagation": pc,
    });
    Ok((record, energy, details))
}

fn quantum_base(cfg: &RunConfig, dir: &Path) -> Result<Base> {
    let (record, energy, mut details) = quantum_record(cfg)?;
    let pulse = record.metadata.pulse;
    let wl = pulse.omega_l;
    let ip = cfg.hhg.ip.unwrap_or(-energy);
    let up = pulse.ponderomotive_energy();
    let signal = Signal::from_record(&record)?;
    let spectrum = PowerSpectrum::new(&signal.values, signal.dt);
    let cutoff = spectrum.cutoff_harmonic(wl, 11, 1e-2);

    if cfg.output.csv {
        io::write_file(&dir.join("dipole.csv"), |w| {
            io::write_dipole_csv(&record.times, &record.ddot_d, w)
        })?;
        io::write_file(&dir.join("spectrum.csv"), |w| {
            use std::io::Write;
            writeln!(w, "omega,order,power")?;
            for (o, p) in spectrum.omega.iter().zip(&spectrum.power) {
                writeln!(w, "{o},{},{p}", o / wl)?;
            }
            Ok(())
        })?;
    }
    if cfg.output.binary {
        io::write_file(&dir.join("dipole.bin"), |w| {
            io::write_series_binary(&signal.time_axis(), &signal.values, w)
        })?;
    }

    let n = signal.len();
    let t_axis = signal.sub_axis(
        0,
        (n - 1) / cfg.hhg.t_stride * cfg.hhg.t_stride,
        cfg.hhg.t_stride,
    )?;
    let d_omega = PI / (cfg.hhg.lag_period as f64 * signal.dt);
    let omega_max = (cfg.hhg.omega_max_orders * wl).min(signal.lag_nyquist());
    let half = (omega_max / d_omega).floor() as usize;
    let omega_axis = Axis::symmetric(half as f64 * d_omega, 2 * half + 1)?;
    let field = wigner_ville(&signal, omega_axis, t_axis)?;

    let cycles = wl / TAU;
    let total = (t_axis.max() - t_axis.min()) * cycles;
    let view = cfg.hhg.view.unwrap_or([
        t_axis.min() * cycles,
        t_axis.min() * cycles + total,
        0.0,
        omega_max / wl,
    ]);
    details["ip"] = json!(ip);
    details["ponderomotive_energy"] = json!(up);
    details["predicted_cutoff_order"] = json!((ip + 3.17 * up) / wl);
    details["spectrum_cutoff_order"] = json!(cutoff);
    details["t_axis"] = json!(t_axis);
    details["omega_axis"] = json!(omega_axis);
    details["norm_final"] = json!(record.norm.last());
    let warnings = record.metadata.warnings.clone();
    Ok(Base {
        field,
        labels: ("t [cycles]", "omega [orders]"),
        scale: (cycles, 1.0 / wl),
        view,
        details,
        warnings,
    })
}

fn classical_outputs(cfg: &RunConfig, dir: &Path) -> Result<Value> {
    let (pulse, conversions) = pulse_from(cfg)?;
    let ip = match cfg.hhg.ip {
        Some(ip) => ip,
        None => -tdse::ground_state(&soft_core_from(cfg)?, hhg_axis(cfg)?)?.1,
    };
    let (t0, t1) = pulse
        .support()
        .ok_or_else(|| Error::Config("pulse has no finite support".into()))?;
    let cycles = (t1 - t0) / pulse.period();
    let n = (cycles * cfg.hhg.births_per_cycle as f64).round() as usize + 1;
    let births = Axis::new(t0, t1, n)?;
    let points = emission_map(&pulse, ip, &births, cfg.hhg.max_returns);
    let scaled: Vec<EmissionPoint> = points.iter().map(|p| p.scaled(pulse.omega_l)).collect();
    if cfg.output.csv {
        io::write_file(&dir.join("emission.csv"), |w| {
            io::write_emission_csv(&points, w)
        })?;
        io::write_file(&dir.join("emission_scaled.csv"), |w| {
            io::write_emission_csv(&scaled, w)
        })?;
    }
    if cfg.output.svg {
        io::write_file(&dir.join("emission.svg"), |w| {
            io::write_emission_svg(&scaled, ("t [cycles]", "omega [orders]"), w)
        })?;
    }
    let up = pulse.ponderomotive_energy();
    let max_first = points
        .iter()
        .filter(|p| p.return_index == 1)
        .fold(f64::NEG_INFINITY, |m, p| m.max(p.omega));
    Ok(json!({
        "pulse": pulse,
        "conversions": conversions,
        "ip": ip,
        "ponderomotive_energy": up,
        "births": births,
        "points": points.len(),
        "max_first_return_omega": max_first,
        "max_first_return_order": max_first / pulse.omega_l,
        "predicted_cutoff_order": (ip + 3.17 * up) / pulse.omega_l,
    }))
}

fn index_range(axis: &Axis, lo: f64, hi: f64) -> std::ops::Range<usize> {
    let start = axis
        .values()
        .position(|x| x >= lo)
        .unwrap_or(axis.len() - 1);
    let end = (0..axis.len())
        .rev()
        .find(|&k| axis.value(k) <= hi)
        .map_or(start + 1, |k| k + 1);
    start..end.max(start + 2).min(axis.len())
}

/// The part of `field` inside `view` (display units), relabeled in display units.
fn displayed(
    field: &DistributionField,
    view: [f64; 4],
    scale: (f64, f64),
) -> Result<DistributionField> {
    let r1 = index_range(field.axis1(), view[0] / scale.0, view[1] / scale.0);
    let r2 = index_range(field.axis2(), view[2] / scale.1, view[3] / scale.1);
    let c = field.crop(r1, r2)?;
    let (a1, a2) = (c.axis1(), c.axis2());
    DistributionField::new(
        Axis::new(a1.min() * scale.0, a1.max() * scale.0, a1.len())?,
        Axis::new(a2.min() * scale.1, a2.max() * scale.1, a2.len())?,
        c.into_values(),
    )
}

fn write_field_set(
    cfg: &RunConfig,
    base: &Base,
    field: &DistributionField,
    dir: &Path,
    stem: &str,
) -> Result<()> {
    let shown = displayed(field, base.view, base.scale)?;
    if cfg.output.csv {
        io::write_file(&dir.join(format!("{stem}.csv")), |w| {
            io::write_field_csv(&shown, w)
        })?;
    }
    if cfg.output.binary {
        io::write_file(&dir.join(format!("{stem}.bin")), |w| {
            io::write_field_binary(&shown, w)
        })?;
    }
    if cfg.output.svg || cfg.output.csv {
        let set = contour_extract(&shown, &default_levels(&shown));
        if cfg.output.svg {
            io::write_file(&dir.join(format!("{stem}_contours.svg")), |w| {
                io::write_contour_svg(&set, shown.axis1(), shown.axis2(), base.labels, w)
            })?;
        }
        if cfg.output.csv {
            io::write_file(&dir.join(format!("{stem}_contours.csv")), |w| {
                io::write_contour_csv(&set, w)
            })?;
        }
    }
    Ok(())
}

fn summarize(index: usize, w: &SmoothingWidths, f: &DistributionField, level: f64) -> WidthSummary {
    let max = f.max();
    WidthSummary {
        index,
        sigma1: w.sigma1,
        sigma2: w.sigma2,
        product: w.product(),
        regime: w.regime(),
        min: f.min(),
        max,
        island_count: island_count(f, level * max),
        mass: f.total_mass(),
    }
}

fn write_summary(path: &Path, rows: &[WidthSummary]) -> Result<()> {
    io::write_file(path, |w| {
        use std::io::Write;
        writeln!(
            w,
            "index,sigma1,sigma2,product,regime,min,max,island_count,mass"
        )?;
        for r in rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                r.index,
                r.sigma1,
                r.sigma2,
                r.product,
                r.regime,
                r.min,
                r.max,
                r.island_count,
                r.mass
            )?;
        }
        Ok(())
    })
}

/// Runs the configured scenario. With `require_widths` (sweep mode) an empty
/// width list is a configuration error.
pub fn execute(cfg: &RunConfig, require_widths: bool) -> Result<RunReport> {
    let started = Instant::now();
    let requested = cfg.width_requests()?;
    if require_widths && requested.is_empty() {
        return Err(Error::Config("sweep needs at least one width pair".into()));
    }
    let (widths, dropped) = dedup_widths(&requested);
    let dir = cfg.output.dir.clone();
    fs::create_dir_all(&dir)?;

    let mut notes: Vec<String> = dropped
        .iter()
        .map(|k| {
            format!(
                "width pair #{k} ({}, {}) repeats an earlier pair and was skipped",
                requested[*k].sigma1, requested[*k].sigma2
            )
        })
        .collect();

    let mut manifest = json!({
        "tool": "wigsmooth",
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": cfg.scenario,
        "config": cfg,
    });

    let (base, summaries) = if cfg.scenario == Scenario::HhgClassical {
        if !widths.is_empty() {
            notes.push(
                "smoothing widths do not apply to the classical emission map and were ignored"
                    .into(),
            );
        }
        manifest["details"] = classical_outputs(cfg, &dir)?;
        (None, Vec::new())
    } else {
        let base = match cfg.scenario {
            Scenario::Well => well_base(cfg),
            Scenario::Step => step_base(cfg),
            _ => quantum_base(cfg, &dir),
        }?;
        write_field_set(cfg, &base, &base.field, &dir, "wigner")?;
        let summaries: Vec<WidthSummary> = widths
            .par_iter()
            .enumerate()
            .map(|(k, w)| {
                let smoothed = gaussian_smooth(&base.field, w)?;
                let sub = dir.join(format!("width_{k:03}"));
                fs::create_dir_all(&sub)?;
                write_field_set(cfg, &base, &smoothed, &sub, "smoothed")?;
                Ok(summarize(k, w, &smoothed, cfg.island_level))
            })
            .collect::<Result<_>>()?;
        write_summary(&dir.join("summary.csv"), &summaries)?;
        manifest["details"] = base.details.clone();
        manifest["raw"] = json!({
            "min": base.field.min(),
            "max": base.field.max(),
            "mass": base.field.total_mass(),
            "island_count": island_count(&base.field, cfg.island_level * base.field.max()),
            "axis1": base.field.axis1(),
            "axis2": base.field.axis2(),
            "display_scale": [base.scale.0, base.scale.1],
            "view": base.view,
        });
        (Some(base), summaries)
    };

    let warnings = base
        .as_ref()
        .map(|b| b.warnings.clone())
        .unwrap_or_default();
    manifest["widths"] = json!(summaries);
    manifest["warnings"] = json!(warnings);
    manifest["notes"] = json!(notes);
    fs::write(
        dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)? + "\n",
    )?;

    let epoch = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    fs::write(
        dir.join("timing.txt"),
        format!(
            "finished_unix_s = {epoch}\nelapsed_s = {:.3}\n",
            started.elapsed().as_secs_f64()
        ),
    )?;
    Ok(RunReport {
        output_dir: dir,
        warnings,
        widths: summaries,
    })
}
