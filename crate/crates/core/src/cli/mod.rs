//! Command-line front end of the `wigsmooth` binary.

mod config;
mod run;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{
    dedup_widths, EnvelopeKind, HhgParams, OutputParams, RunConfig, Scenario, StepParams,
    WellParams,
};
pub use run::{execute, RunReport, WidthSummary};

use crate::error::{Error, Result};
use crate::io;
use crate::phase_space::{contour_extract, default_levels, gaussian_smooth, SmoothingWidths};

#[derive(Debug, Parser)]
#[command(
    name = "wigsmooth",
    version,
    about = "Wigner, smoothed Wigner and Husimi distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Configuration file (`key = value` lines under `[section]` headers).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides one configuration key, e.g. `--set well.n=3`.
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    pub set: Vec<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated output formats out of csv, binary, svg.
    #[arg(long)]
    pub formats: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Square-well eigenstate.
    Well {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long = "sigma-q")]
        sigma_q: Option<f64>,
        #[arg(long = "sigma-p")]
        sigma_p: Option<f64>,
    },
    /// Scattering state on a potential step.
    Step {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        energy: Option<f64>,
        #[arg(long = "sigma-q")]
        sigma_q: Option<f64>,
        #[arg(long = "sigma-p")]
        sigma_p: Option<f64>,
    },
    /// Classical return-time / emitted-frequency map.
    HhgClassical {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        e0: Option<f64>,
        #[arg(long = "omega-l")]
        omega_l: Option<f64>,
    },
    /// Dipole acceleration from the soft-core atom and its time-frequency fields.
    HhgQuantum {
        #[command(flatten)]
        common: Common,
        #[arg(long = "sigma-t")]
        sigma_t: Option<f64>,
        #[arg(long = "sigma-omega")]
        sigma_omega: Option<f64>,
        /// 160 fs Gaussian pulse at 3e14 W/cm^2 and 800 nm; takes minutes.
        #[arg(long = "long-pulse")]
        long_pulse: bool,
    },
    /// Smooths a stored field.
    Smooth {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        sigma1: f64,
        #[arg(long)]
        sigma2: f64,
        /// `hbar` for position-momentum fields, 1 for time-frequency fields.
        #[arg(long, default_value_t = 1.0)]
        planck: f64,
    },
    /// Contours of a stored field.
    Contour {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated levels; ten levels between 10% and 90% of the range by default.
        #[arg(long)]
        levels: Option<String>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Runs the configured scenario once per width pair and writes a summary.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
}

const LONG_PULSE: &[(&str, &str)] = &[
    ("hhg.envelope", "gaussian"),
    ("hhg.fwhm_fs", "160"),
    ("hhg.intensity_w_cm2", "3e14"),
    ("hhg.wavelength_nm", "800"),
];

fn load(common: &Common, scenario: Option<Scenario>, preset: &[(&str, &str)]) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    if let Some(s) = scenario {
        cfg.scenario = s;
    }
    for (k, v) in preset {
        cfg.set(k, v)?;
    }
    for kv in &common.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects key=value, got {kv:?}")))?;
        cfg.set(k.trim(), v)?;
    }
    if let Some(out) = &common.out {
        cfg.output.dir = out.clone();
    }
    if let Some(f) = &common.formats {
        cfg.set("output.formats", f)?;
    }
    Ok(cfg)
}

fn width_flags(
    cfg: &mut RunConfig,
    a: Option<f64>,
    b: Option<f64>,
    names: (&str, &str),
) -> Result<()> {
    match (a, b) {
        (Some(a), Some(b)) => {
            cfg.set("smoothing.widths", &format!("{a}:{b}"))?;
            cfg.husimi.clear();
            Ok(())
        }
        (None, None) => Ok(()),
        _ => Err(Error::Config(format!(
            "--{} and --{} must be given together",
            names.0, names.1
        ))),
    }
}

fn report(r: &RunReport) {
    println!("wrote {}", r.output_dir.display());
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    for s in &r.widths {
        println!(
            "  sigma = ({}, {}) {}: min {:.3e}, max {:.3e}, islands {}",
            s.sigma1, s.sigma2, s.regime, s.min, s.max, s.island_count
        );
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Well {
            common,
            n,
            sigma_q,
            sigma_p,
        } => {
            let mut cfg = load(&common, Some(Scenario::Well), &[])?;
            if let Some(n) = n {
                cfg.set("well.n", &n.to_string())?;
            }
            width_flags(&mut cfg, sigma_q, sigma_p, ("sigma-q", "sigma-p"))?;
            report(&execute(&cfg, false)?);
        }
        Command::Step {
            common,
            energy,
            sigma_q,
            sigma_p,
        } => {
            let mut cfg = load(&common, Some(Scenario::Step), &[])?;
            if let Some(e) = energy {
                cfg.set("step.energy", &e.to_string())?;
            }
            width_flags(&mut cfg, sigma_q, sigma_p, ("sigma-q", "sigma-p"))?;
            report(&execute(&cfg, false)?);
        }
        Command::HhgClassical {
            common,
            e0,
            omega_l,
        } => {
            let mut cfg = load(&common, Some(Scenario::HhgClassical), &[])?;
            if let Some(e) = e0 {
                cfg.set("hhg.e0", &e.to_string())?;
            }
            if let Some(w) = omega_l {
                cfg.set("hhg.omega_l", &w.to_string())?;
            }
            report(&execute(&cfg, false)?);
        }
        Command::HhgQuantum {
            common,
            sigma_t,
            sigma_omega,
            long_pulse,
        } => {
            let preset: &[(&str, &str)] = if long_pulse { LONG_PULSE } else { &[] };
            let mut cfg = load(&common, Some(Scenario::HhgQuantum), preset)?;
            width_flags(&mut cfg, sigma_t, sigma_omega, ("sigma-t", "sigma-omega"))?;
            report(&execute(&cfg, false)?);
        }
        Command::Smooth {
            input,
            output,
            sigma1,
            sigma2,
            planck,
        } => {
            let widths = SmoothingWidths::new(sigma1, sigma2, planck)
                .map_err(|e| Error::Config(e.to_string()))?;
            let field = io::read_field(&input)?;
            let smoothed = gaussian_smooth(&field, &widths)?;
            let binary = output.extension().is_some_and(|e| e == "bin");
            io::write_file(&output, |w| {
                if binary {
                    io::write_field_binary(&smoothed, w)
                } else {
                    io::write_field_csv(&smoothed, w)
                }
            })?;
            println!("wrote {} ({})", output.display(), widths.regime());
        }
        Command::Contour {
            input,
            levels,
            svg,
            csv,
        } => {
            let field = io::read_field(&input)?;
            let levels = match levels {
                Some(s) => s
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Config(format!("bad level {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
                None => default_levels(&field),
            };
            let set = contour_extract(&field, &levels);
            if let Some(p) = &svg {
                io::write_file(p, |w| {
                    io::write_contour_svg(&set, field.axis1(), field.axis2(), ("axis1", "axis2"), w)
                })?;
            }
            if let Some(p) = &csv {
                io::write_file(p, |w| io::write_contour_csv(&set, w))?;
            }
            for (level, lines) in set.iter() {
                println!(
                    "level {level}: {} polylines, {} closed",
                    lines.len(),
                    lines.iter().filter(|l| l.closed).count()
                );
            }
        }
        Command::Sweep { common } => {
            let cfg = load(&common, None, &[])?;
            report(&execute(&cfg, true)?);
        }
    }
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("WIGSMOOTH_THREADS") {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Error::Config(format!(
                "WIGSMOOTH_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("cannot size the thread pool: {e}")))?;
    }
    Ok(())
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match configure_threads().and_then(|_| dispatch(cli)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
