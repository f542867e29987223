use std::f64::consts::{LN_2, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    /// Intensity FWHM `fwhm` about `t_center`.
    Gaussian,
    /// `sin^2` ramps of `ramp_cycles` optical cycles on each side of a flat
    /// plateau; `fwhm` is measured at half amplitude between the ramps.
    FlatTop { ramp_cycles: f64 },
    /// Constant amplitude for all times.
    Continuous,
}

/// Linearly polarized pulse `E(t) = E0 f(t) cos(omega_L (t - t_center))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseSpec {
    pub e0: f64,
    pub omega_l: f64,
    pub fwhm: f64,
    pub t_center: f64,
    pub envelope: Envelope,
}

impl PulseSpec {
    pub fn gaussian(e0: f64, omega_l: f64, fwhm: f64, t_center: f64) -> Result<Self> {
        PulseSpec {
            e0,
            omega_l,
            fwhm,
            t_center,
            envelope: Envelope::Gaussian,
        }
        .validated()
    }

    /// Flat-top pulse of `total_cycles` starting at `t = 0`, including both ramps.
    pub fn flat_top(e0: f64, omega_l: f64, total_cycles: f64, ramp_cycles: f64) -> Result<Self> {
        if !(ramp_cycles >= 0.0 && 2.0 * ramp_cycles <= total_cycles) {
            return Err(Error::InvalidParameter(format!(
                "ramps of {ramp_cycles} cycles do not fit in a {total_cycles}-cycle pulse"
            )));
        }
        let period = TAU / omega_l;
        PulseSpec {
            e0,
            omega_l,
            fwhm: (total_cycles - ramp_cycles) * period,
            t_center: 0.5 * total_cycles * period,
            envelope: Envelope::FlatTop { ramp_cycles },
        }
        .validated()
    }

    pub fn continuous(e0: f64, omega_l: f64) -> Result<Self> {
        PulseSpec {
            e0,
            omega_l,
            fwhm: 1.0,
            t_center: 0.0,
            envelope: Envelope::Continuous,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.e0 >= 0.0 && self.e0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "field amplitude must be non-negative, got {}",
                self.e0
            )));
        }
        if !(self.omega_l > 0.0 && self.omega_l.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "carrier frequency must be positive, got {}",
                self.omega_l
            )));
        }
        if !(self.fwhm > 0.0 && self.fwhm.is_finite() && self.t_center.is_finite()) {
            return Err(Error::InvalidParameter(
                "pulse duration and center must be finite, duration positive".into(),
            ));
        }
        if let Envelope::FlatTop { ramp_cycles } = self.envelope {
            if !(ramp_cycles >= 0.0) || self.ramp_time() > self.fwhm {
                return Err(Error::InvalidParameter(format!(
                    "invalid ramp length {ramp_cycles} cycles"
                )));
            }
        }
        Ok(self)
    }

    pub fn period(&self) -> f64 {
        TAU / self.omega_l
    }

    fn ramp_time(&self) -> f64 {
        match self.envelope {
            Envelope::FlatTop { ramp_cycles } => ramp_cycles * self.period(),
            _ => 0.0,
        }
    }

    pub fn envelope_at(&self, t: f64) -> f64 {
        let u = t - self.t_center;
        match self.envelope {
            Envelope::Gaussian => (-2.0 * LN_2 * u * u / (self.fwhm * self.fwhm)).exp(),
            Envelope::Continuous => 1.0,
            Envelope::FlatTop { .. } => {
                let ramp = self.ramp_time();
                let half = 0.5 * (self.fwhm + ramp);
                let d = half - u.abs();
                if d <= 0.0 {
                    0.0
                } else if d >= ramp {
                    1.0
                } else {
                    (0.5 * PI * d / ramp).sin().powi(2)
                }
            }
        }
    }

    pub fn field(&self, t: f64) -> f64 {
        self.e0 * self.envelope_at(t) * (self.omega_l * (t - self.t_center)).cos()
    }

    /// Interval outside which the envelope vanishes (flat top) or falls below
    /// `1e-8` (Gaussian). `None` for a continuous wave.
    pub fn support(&self) -> Option<(f64, f64)> {
        let half = match self.envelope {
            Envelope::Gaussian => self.fwhm * (8.0 * 10f64.ln() / (2.0 * LN_2)).sqrt(),
            Envelope::FlatTop { .. } => 0.5 * (self.fwhm + self.ramp_time()),
            Envelope::Continuous => return None,
        };
        Some((self.t_center - half, self.t_center + half))
    }

    pub fn ponderomotive_energy(&self) -> f64 {
        super::units::ponderomotive_energy(self.e0, self.omega_l)
    }
}
