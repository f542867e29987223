use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::WavefunctionGrid;
use crate::error::{Error, Result};
use crate::phase_space::Axis;

/// Eigenstate `n` of the infinite well `|q| < a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquareWellSpec {
    pub half_width: f64,
    pub mass: f64,
    pub hbar: f64,
    pub n: u32,
}

impl SquareWellSpec {
    pub fn new(half_width: f64, mass: f64, hbar: f64, n: u32) -> Result<Self> {
        for (name, v) in [("half_width", half_width), ("mass", mass), ("hbar", hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if n == 0 {
            return Err(Error::InvalidParameter(
                "eigenstate index starts at 1".into(),
            ));
        }
        Ok(SquareWellSpec {
            half_width,
            mass,
            hbar,
            n,
        })
    }

    /// Unit mass and hbar, well width 20.
    pub fn reference(n: u32) -> Self {
        SquareWellSpec {
            half_width: 10.0,
            mass: 1.0,
            hbar: 1.0,
            n,
        }
    }

    pub fn wavenumber(&self) -> f64 {
        self.n as f64 * PI / (2.0 * self.half_width)
    }

    pub fn energy(&self) -> f64 {
        let p = self.hbar * self.wavenumber();
        p * p / (2.0 * self.mass)
    }

    /// Analytic eigenfunction, exactly zero on and beyond the walls.
    pub fn eval(&self, q: f64) -> f64 {
        let a = self.half_width;
        if q.abs() >= a {
            return 0.0;
        }
        let arg = self.wavenumber() * q;
        let s = if self.n % 2 == 1 {
            arg.cos()
        } else {
            arg.sin()
        };
        s / a.sqrt()
    }

    /// Exact `sqrt(<q^2>)` of the eigenstate.
    pub fn delta_q(&self) -> f64 {
        let a = self.half_width;
        let nn = (self.n as f64 * PI).powi(2);
        a * (1.0 / 3.0 - 2.0 / nn).sqrt()
    }

    /// Exact `sqrt(<p^2>)` of the eigenstate.
    pub fn delta_p(&self) -> f64 {
        self.hbar * self.wavenumber()
    }
}

/// Samples the eigenfunction on `axis`, which must cover the whole well.
/// The samples are rescaled to unit trapezoidal norm.
pub fn square_well_wavefunction(spec: &SquareWellSpec, axis: Axis) -> Result<WavefunctionGrid> {
    let a = spec.half_width;
    let tol = 1e-9 * axis.spacing();
    if axis.min() > -a + tol || axis.max() < a - tol {
        return Err(Error::InvalidParameter(format!(
            "axis [{}, {}] does not cover the well [{}, {}]",
            axis.min(),
            axis.max(),
            -a,
            a
        )));
    }
    WavefunctionGrid::from_fn(axis, |q| Complex64::new(spec.eval(q), 0.0))?.normalized()
}
