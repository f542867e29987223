use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::WavefunctionGrid;
use crate::error::{Error, Result};
use crate::phase_space::Axis;

/// Stationary scattering state on the step `V = V0 for q >= 0`, with unit
/// incident amplitude from the left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepPotentialSpec {
    pub v0: f64,
    pub energy: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl StepPotentialSpec {
    pub fn new(v0: f64, energy: f64, mass: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [
            ("v0", v0),
            ("energy", energy),
            ("mass", mass),
            ("hbar", hbar),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if energy == v0 {
            return Err(Error::InvalidParameter(
                "energy equal to the step height is not supported".into(),
            ));
        }
        Ok(StepPotentialSpec {
            v0,
            energy,
            mass,
            hbar,
        })
    }

    /// `m = V0 = 1`, `E = 1/2`.
    pub fn reference() -> Self {
        StepPotentialSpec {
            v0: 1.0,
            energy: 0.5,
            mass: 1.0,
            hbar: 1.0,
        }
    }

    pub fn below_barrier(&self) -> bool {
        self.energy < self.v0
    }

    /// Incident wavenumber `k`.
    pub fn k(&self) -> f64 {
        (2.0 * self.mass * self.energy).sqrt() / self.hbar
    }

    /// Decay constant inside the step; zero above the barrier.
    pub fn kappa(&self) -> f64 {
        if self.below_barrier() {
            (2.0 * self.mass * (self.v0 - self.energy)).sqrt() / self.hbar
        } else {
            0.0
        }
    }

    /// Transmitted wavenumber above the barrier; zero below it.
    pub fn k_transmitted(&self) -> f64 {
        if self.below_barrier() {
            0.0
        } else {
            (2.0 * self.mass * (self.energy - self.v0)).sqrt() / self.hbar
        }
    }

    // Right-side wavenumber as a complex number: k2 = i kappa below the barrier.
    fn k_right(&self) -> Complex64 {
        if self.below_barrier() {
            Complex64::new(0.0, self.kappa())
        } else {
            Complex64::new(self.k_transmitted(), 0.0)
        }
    }

    pub fn reflection(&self) -> Complex64 {
        let k = Complex64::new(self.k(), 0.0);
        (k - self.k_right()) / (k + self.k_right())
    }

    pub fn transmission(&self) -> Complex64 {
        let k = self.k();
        Complex64::new(2.0 * k, 0.0) / (k + self.k_right())
    }

    pub fn eval(&self, q: f64) -> Complex64 {
        let k = self.k();
        if q < 0.0 {
            Complex64::from_polar(1.0, k * q)
                + self.reflection() * Complex64::from_polar(1.0, -k * q)
        } else {
            self.transmission() * (Complex64::new(0.0, 1.0) * self.k_right() * q).exp()
        }
    }

    pub fn wavelength(&self) -> f64 {
        TAU / self.k()
    }

    /// Grid `[-20 lambda, 25 / kappa]` with roughly the requested spacing.
    /// Above the barrier the right edge mirrors the left.
    pub fn default_axis(&self, spacing: f64) -> Result<Axis> {
        let left = -20.0 * self.wavelength();
        let right = if self.below_barrier() {
            25.0 / self.kappa()
        } else {
            -left
        };
        let n = ((right - left) / spacing).round() as usize + 1;
        Axis::new(left, right, n)
    }

    /// Gaussian roll-off of the incident side beyond half the left extent, so
    /// that the state reaches zero at `extent` to better than `1e-13`.
    pub fn incident_taper(extent: f64) -> impl Fn(f64) -> f64 {
        let start = -0.5 * extent;
        let s = extent / 16.0;
        move |q| {
            if q < start {
                (-(q - start).powi(2) / (2.0 * s * s)).exp()
            } else {
                1.0
            }
        }
    }
}

/// Samples the scattering state on `axis`, which must straddle `q = 0`.
pub fn step_wavefunction(spec: &StepPotentialSpec, axis: Axis) -> Result<WavefunctionGrid> {
    if spec.energy == spec.v0 {
        return Err(Error::InvalidParameter(
            "energy equal to the step height is not supported".into(),
        ));
    }
    if !(axis.min() <= 0.0 && axis.max() >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "axis [{}, {}] does not include the step at q = 0",
            axis.min(),
            axis.max()
        )));
    }
    WavefunctionGrid::from_fn(axis, |q| spec.eval(q))
}

/// The scattering state on [`StepPotentialSpec::default_axis`] with the
/// incident side rolled off, suitable for the decaying-edge transforms.
pub fn tapered_step_wavefunction(
    spec: &StepPotentialSpec,
    spacing: f64,
) -> Result<WavefunctionGrid> {
    let axis = spec.default_axis(spacing)?;
    let taper_left = StepPotentialSpec::incident_taper(-axis.min());
    let raw = step_wavefunction(spec, axis)?;
    if spec.below_barrier() {
        raw.windowed(taper_left)
    } else {
        let right = StepPotentialSpec::incident_taper(axis.max());
        raw.windowed(move |q| taper_left(q) * right(-q))
    }
}
