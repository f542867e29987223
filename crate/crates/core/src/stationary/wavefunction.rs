use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase_space::Axis;

/// Complex wave function sampled on a uniform position grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionGrid {
    axis: Axis,
    values: Vec<Complex64>,
}

impl WavefunctionGrid {
    pub fn new(axis: Axis, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != axis.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} samples", axis.len()),
                got: format!("{} samples", values.len()),
            });
        }
        if let Some(k) = values
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(k));
        }
        Ok(WavefunctionGrid { axis, values })
    }

    pub fn from_fn(axis: Axis, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = axis.values().map(f).collect();
        WavefunctionGrid::new(axis, values)
    }

    pub fn from_real(axis: Axis, values: &[f64]) -> Result<Self> {
        WavefunctionGrid::new(
            axis,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Normalized Gaussian packet `(pi s^2)^(-1/4) exp(-(q-q0)^2 / 2s^2 + i k0 q)`.
    pub fn gaussian(axis: Axis, center: f64, width: f64, wavenumber: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "packet width must be positive, got {width}"
            )));
        }
        let amp = (PI * width * width).powf(-0.25);
        WavefunctionGrid::from_fn(axis, |q| {
            let d = q - center;
            Complex64::from_polar(amp * (-d * d / (2.0 * width * width)).exp(), wavenumber * q)
        })
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Trapezoidal `integral |psi|^2 dq`.
    pub fn norm_sqr(&self) -> f64 {
        self.axis.trapezoid(&self.density())
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > 0.0) {
            return Err(Error::InvalidParameter(
                "cannot normalize a vanishing wave function".into(),
            ));
        }
        let s = 1.0 / n.sqrt();
        self.values.iter_mut().for_each(|z| *z *= s);
        Ok(self)
    }

    /// Largest edge amplitude relative to the largest amplitude.
    pub fn edge_ratio(&self) -> f64 {
        let peak = self.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if peak == 0.0 {
            return 0.0;
        }
        self.values[0]
            .norm()
            .max(self.values[self.values.len() - 1].norm())
            / peak
    }

    /// Pointwise product with a real window.
    pub fn windowed(&self, window: impl Fn(f64) -> f64) -> Result<Self> {
        let values = self
            .axis
            .values()
            .zip(&self.values)
            .map(|(q, z)| z * window(q))
            .collect();
        WavefunctionGrid::new(self.axis, values)
    }

    pub fn inner(&self, other: &WavefunctionGrid) -> Complex64 {
        let w = self.axis.trapezoid_weights();
        self.values
            .iter()
            .zip(&other.values)
            .zip(w)
            .map(|((a, b), w)| a.conj() * b * w)
            .sum()
    }

    /// `<q>` and `<q^2>` with the state's own norm.
    pub fn position_moments(&self) -> (f64, f64) {
        let rho = self.density();
        let norm = self.axis.trapezoid(&rho);
        let m1: Vec<f64> = self.axis.values().zip(&rho).map(|(q, r)| q * r).collect();
        let m2: Vec<f64> = self
            .axis
            .values()
            .zip(&rho)
            .map(|(q, r)| q * q * r)
            .collect();
        (
            self.axis.trapezoid(&m1) / norm,
            self.axis.trapezoid(&m2) / norm,
        )
    }

    /// `<p>` from the central-difference derivative.
    pub fn mean_momentum(&self, hbar: f64) -> f64 {
        let h = self.axis.spacing();
        let n = self.values.len();
        let mut acc = 0.0;
        for k in 1..n - 1 {
            let d = (self.values[k + 1] - self.values[k - 1]) / (2.0 * h);
            acc += (self.values[k].conj() * Complex64::new(0.0, -hbar) * d).re * h;
        }
        acc / self.norm_sqr()
    }

    /// `<p^2> = hbar^2 integral |psi'|^2` from forward differences.
    pub fn mean_momentum_sqr(&self, hbar: f64) -> f64 {
        let h = self.axis.spacing();
        let s: f64 = self
            .values
            .windows(2)
            .map(|w| (w[1] - w[0]).norm_sqr())
            .sum::<f64>()
            / h;
        hbar * hbar * s / self.norm_sqr()
    }
}
