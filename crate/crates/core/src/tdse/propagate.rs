use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::potential::Potential;
use super::pulse::PulseSpec;
use super::tridiag::solve_tridiagonal;
use crate::error::{Error, Result};
use crate::phase_space::Axis;
use crate::stationary::WavefunctionGrid;

/// Norm growth per step that aborts a propagation.
pub const NORM_GROWTH_LIMIT: f64 = 1.001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagationConfig {
    pub axis: Axis,
    pub dt: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub absorber_width: f64,
    pub record_stride: usize,
}

impl PropagationConfig {
    pub fn new(
        axis: Axis,
        dt: f64,
        t_start: f64,
        t_end: f64,
        absorber_width: f64,
        record_stride: usize,
    ) -> Result<Self> {
        let cfg = PropagationConfig {
            axis,
            dt,
            t_start,
            t_end,
            absorber_width,
            record_stride,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Absorber over the outer tenth of the grid on each side, every step recorded.
    pub fn with_default_absorber(axis: Axis, dt: f64, t_start: f64, t_end: f64) -> Result<Self> {
        PropagationConfig::new(axis, dt, t_start, t_end, 0.1 * axis.span(), 1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_end > self.t_start) || !self.t_start.is_finite() || !self.t_end.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "empty time window [{}, {}]",
                self.t_start, self.t_end
            )));
        }
        if !(self.absorber_width >= 0.0 && self.absorber_width < 0.25 * self.axis.span()) {
            return Err(Error::InvalidParameter(format!(
                "absorber width {} must lie in [0, span/4 = {})",
                self.absorber_width,
                0.25 * self.axis.span()
            )));
        }
        if self.record_stride == 0 {
            return Err(Error::InvalidParameter(
                "record stride must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        ((self.t_end - self.t_start) / self.dt).round() as usize
    }

    /// Accuracy heuristics that are violated but do not prevent a run.
    pub fn warnings(&self) -> Vec<String> {
        let h = self.axis.spacing();
        let mut w = Vec::new();
        if self.dt > 0.2 * h * h {
            w.push(format!(
                "dt = {} exceeds 0.2 dx^2 = {:.4e}; fast grid modes are phase-inaccurate",
                self.dt,
                0.2 * h * h
            ));
        }
        w
    }

    /// `cos^(1/8)` mask, equal to one outside the absorbing layers.
    pub fn absorber_mask(&self) -> Vec<f64> {
        let w = self.absorber_width;
        let (lo, hi) = (self.axis.min() + w, self.axis.max() - w);
        self.axis
            .values()
            .map(|x| {
                let depth = if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    0.0
                };
                if depth <= 0.0 || w == 0.0 {
                    1.0
                } else {
                    (PI * depth / (2.0 * w)).cos().max(0.0).powf(0.125)
                }
            })
            .collect()
    }
}

/// Crank-Nicolson integrator for `H(t) = p^2/2 + V(x) - x E(t)` in the length gauge.
pub struct Propagator {
    axis: Axis,
    x: Vec<f64>,
    v: Vec<f64>,
    dv: Vec<f64>,
    mask: Vec<f64>,
    psi: Vec<Complex64>,
    dt: f64,
    t: f64,
    sub: Vec<Complex64>,
    diag: Vec<Complex64>,
    rhs: Vec<Complex64>,
    next: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Propagator {
    pub fn new(
        psi0: &WavefunctionGrid,
        potential: &dyn Potential,
        config: &PropagationConfig,
    ) -> Result<Self> {
        config.validate()?;
        if psi0.axis() != &config.axis {
            return Err(Error::ShapeMismatch {
                expected: format!("{:?}", config.axis),
                got: format!("{:?}", psi0.axis()),
            });
        }
        let x: Vec<f64> = config.axis.values().collect();
        let n = x.len();
        let off = Complex64::new(0.0, -config.dt / (4.0 * config.axis.spacing().powi(2)));
        Ok(Propagator {
            axis: config.axis,
            v: x.iter().map(|&x| potential.value(x)).collect(),
            dv: x.iter().map(|&x| potential.derivative(x)).collect(),
            x,
            mask: config.absorber_mask(),
            psi: psi0.values().to_vec(),
            dt: config.dt,
            t: config.t_start,
            sub: vec![off; n],
            diag: vec![Complex64::default(); n],
            rhs: vec![Complex64::default(); n],
            next: vec![Complex64::default(); n],
            scratch: Vec::new(),
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn wavefunction(&self) -> WavefunctionGrid {
        WavefunctionGrid::new(self.axis, self.psi.clone()).expect("propagated state stays finite")
    }

    /// `sum |psi|^2 dx`.
    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.axis.spacing()
    }

    pub fn mean_position(&self) -> f64 {
        self.psi
            .iter()
            .zip(&self.x)
            .map(|(z, x)| z.norm_sqr() * x)
            .sum::<f64>()
            * self.axis.spacing()
    }

    /// `-<psi|V'|psi> + E(t)`.
    pub fn dipole_acceleration(&self, field: f64) -> f64 {
        let force: f64 = self
            .psi
            .iter()
            .zip(&self.dv)
            .map(|(z, d)| z.norm_sqr() * d)
            .sum();
        -force * self.axis.spacing() + field
    }

    /// Advances one step with the field sampled at the step midpoint.
    pub fn step(&mut self, pulse: &PulseSpec) -> Result<()> {
        let h2 = self.axis.spacing().powi(2);
        let e_mid = pulse.field(self.t + 0.5 * self.dt);
        let half = 0.5 * self.dt;
        let off_rhs = -self.sub[0];
        let n = self.psi.len();
        let before = self.norm_sqr();
        for i in 0..n {
            let hd = 1.0 / h2 + self.v[i] - self.x[i] * e_mid;
            self.diag[i] = Complex64::new(1.0, half * hd);
            let mut r = Complex64::new(1.0, -half * hd) * self.psi[i];
            if i > 0 {
                r += off_rhs * self.psi[i - 1];
            }
            if i + 1 < n {
                r += off_rhs * self.psi[i + 1];
            }
            self.rhs[i] = r;
        }
        solve_tridiagonal(
            &self.sub,
            &self.diag,
            &self.sub,
            &self.rhs,
            &mut self.next,
            &mut self.scratch,
        );
        std::mem::swap(&mut self.psi, &mut self.next);
        self.t += self.dt;
        if self
            .psi
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::PropagationAborted {
                time: self.t,
                reason: "non-finite amplitude".into(),
            });
        }
        let after = self.norm_sqr();
        if after > NORM_GROWTH_LIMIT * before {
            return Err(Error::PropagationAborted {
                time: self.t,
                reason: format!("norm grew from {before:.6e} to {after:.6e} in one step"),
            });
        }
        for (z, m) in self.psi.iter_mut().zip(&self.mask) {
            *z *= m;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordMetadata {
    pub pulse: PulseSpec,
    pub config: PropagationConfig,
    pub potential: String,
    pub warnings: Vec<String>,
}

/// Sampled dipole acceleration together with the position and norm history.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleRecord {
    pub times: Vec<f64>,
    pub ddot_d: Vec<f64>,
    pub mean_x: Vec<f64>,
    pub norm: Vec<f64>,
    pub metadata: RecordMetadata,
}

impl DipoleRecord {
    pub fn stride(&self) -> f64 {
        self.metadata.config.dt * self.metadata.config.record_stride as f64
    }

    /// Second difference of `<x>` at the interior record times.
    pub fn position_acceleration(&self) -> Vec<f64> {
        let s2 = self.stride().powi(2);
        self.mean_x
            .windows(3)
            .map(|w| (w[0] - 2.0 * w[1] + w[2]) / s2)
            .collect()
    }
}

/// Propagates `psi0` over the configured window, recording at `t_start` and
/// every `record_stride` steps after it.
pub fn propagate(
    psi0: &WavefunctionGrid,
    potential: &dyn Potential,
    pulse: &PulseSpec,
    config: &PropagationConfig,
) -> Result<DipoleRecord> {
    let mut prop = Propagator::new(psi0, potential, config)?;
    let steps = config.steps();
    let cap = steps / config.record_stride + 1;
    let mut rec = DipoleRecord {
        times: Vec::with_capacity(cap),
        ddot_d: Vec::with_capacity(cap),
        mean_x: Vec::with_capacity(cap),
        norm: Vec::with_capacity(cap),
        metadata: RecordMetadata {
            pulse: *pulse,
            config: *config,
            potential: potential.label(),
            warnings: config.warnings(),
        },
    };
    let sample = |prop: &Propagator, k: usize, rec: &mut DipoleRecord| {
        let t = config.t_start + k as f64 * config.dt;
        rec.times.push(t);
        rec.ddot_d.push(prop.dipole_acceleration(pulse.field(t)));
        rec.mean_x.push(prop.mean_position());
        rec.norm.push(prop.norm_sqr());
    };
    sample(&prop, 0, &mut rec);
    for k in 1..=steps {
        prop.step(pulse)?;
        if k % config.record_stride == 0 {
            sample(&prop, k, &mut rec);
        }
    }
    Ok(rec)
}
