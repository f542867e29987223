//! Wigner-Ville and Gaussian-window (Husimi) distributions of a real,
//! uniformly sampled signal.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase_space::lag::{symmetric_lag_rows, LagTransform};
use crate::phase_space::{Axis, DistributionField, LagMethod};
use crate::stationary::{check_frequency_axis, gaussian_projection};
use crate::tdse::DipoleRecord;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Signal {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl Signal {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sampling step must be positive, got {dt}"
            )));
        }
        if values.len() < 2 {
            return Err(Error::InvalidParameter(
                "a signal needs at least two samples".into(),
            ));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Signal { t0, dt, values })
    }

    pub fn from_record(record: &DipoleRecord) -> Result<Self> {
        let t0 = record.times.first().copied().unwrap_or(0.0);
        Signal::new(t0, record.stride(), record.ddot_d.clone())
    }

    /// Uniform samples of the times `t0 + k dt`.
    pub fn from_times(times: &[f64], values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::ShapeMismatch {
                expected: format!("{} samples", times.len()),
                got: format!("{} values", values.len()),
            });
        }
        let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
        for (k, t) in times.iter().enumerate() {
            if (t - times[0] - k as f64 * dt).abs() > 1e-6 * dt {
                return Err(Error::Format(format!(
                    "sample time {t} breaks the uniform stride {dt}"
                )));
            }
        }
        Signal::new(times[0], dt, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time_axis(&self) -> Axis {
        Axis::from_spacing(self.t0, self.dt, self.values.len()).expect("validated signal")
    }

    /// Every `stride`-th sample time from `start` to `end` (sample indices).
    pub fn sub_axis(&self, start: usize, end: usize, stride: usize) -> Result<Axis> {
        if stride == 0 || end >= self.len() || end <= start {
            return Err(Error::InvalidParameter(format!(
                "bad sample range {start}..={end} step {stride}"
            )));
        }
        let n = (end - start) / stride + 1;
        Axis::from_spacing(self.t0 + start as f64 * self.dt, stride as f64 * self.dt, n)
    }

    /// `pi / (2 dt)`, the largest frequency the doubled lag phase resolves.
    pub fn lag_nyquist(&self) -> f64 {
        PI / (2.0 * self.dt)
    }

    fn sample_indices(&self, t_axis: &Axis) -> Result<Vec<usize>> {
        t_axis
            .values()
            .map(|t| {
                let k = (t - self.t0) / self.dt;
                let r = k.round();
                if (k - r).abs() > 1e-6 || r < 0.0 || r as usize >= self.len() {
                    Err(Error::InvalidParameter(format!(
                        "time {t} is not a sample of the signal"
                    )))
                } else {
                    Ok(r as usize)
                }
            })
            .collect()
    }
}

/// Wigner-Ville field with the lag half-window available at each time.
#[derive(Debug, Clone)]
pub struct WignerVille {
    pub field: DistributionField,
    /// Half-width of the lag window at each row; shorter than the record
    /// means the window was cut by a record edge.
    pub lag_reach: Vec<f64>,
    pub imaginary_residue: f64,
}

/// `W(t, omega) = (1/pi) sum_tau exp(-2i omega tau) d(t - tau) d(t + tau) dtau`
/// on `t_axis x omega_axis`; every time must be a sample of `signal`.
pub fn wigner_ville(signal: &Signal, omega_axis: Axis, t_axis: Axis) -> Result<DistributionField> {
    Ok(wigner_ville_with(signal, omega_axis, t_axis, LagMethod::Auto)?.field)
}

pub fn wigner_ville_with(
    signal: &Signal,
    omega_axis: Axis,
    t_axis: Axis,
    method: LagMethod,
) -> Result<WignerVille> {
    check_frequency_axis(&omega_axis, signal.lag_nyquist())?;
    let centers = signal.sample_indices(&t_axis)?;
    let samples: Vec<Complex64> = signal
        .values
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    let lag = LagTransform::new(omega_axis, 2.0 * signal.dt, method);
    let (values, imaginary_residue) = symmetric_lag_rows(&samples, &centers, &lag, signal.dt / PI);
    let n = signal.len();
    let lag_reach = centers
        .iter()
        .map(|&i| i.min(n - 1 - i) as f64 * signal.dt)
        .collect();
    Ok(WignerVille {
        field: DistributionField::new(t_axis, omega_axis, values)?,
        lag_reach,
        imaginary_residue,
    })
}

/// `H(t, omega) = (1/2 pi) sqrt(kappa/pi) |sum_tau exp(-kappa (tau - t)^2 / 2 - i omega tau) d(tau) dtau|^2`.
pub fn husimi_tf(signal: &Signal, kappa: f64, axes: (Axis, Axis)) -> Result<DistributionField> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    let (t_axis, omega_axis) = axes;
    check_frequency_axis(&omega_axis, PI / signal.dt)?;
    let lag = LagTransform::new(omega_axis, signal.dt, LagMethod::Auto);
    let prefactor = (kappa / PI).sqrt() / TAU * signal.dt * signal.dt;
    gaussian_projection(
        &signal.values,
        signal.time_axis(),
        t_axis,
        omega_axis,
        &lag,
        0.5 * kappa,
        prefactor,
    )
}

/// Relabels a `(t, omega)` field in optical cycles and harmonic orders.
pub fn to_cycles_and_orders(field: &DistributionField, omega_l: f64) -> Result<DistributionField> {
    let cyc = omega_l / TAU;
    let a1 = field.axis1();
    let a2 = field.axis2();
    DistributionField::new(
        Axis::new(a1.min() * cyc, a1.max() * cyc, a1.len())?,
        Axis::new(a2.min() / omega_l, a2.max() / omega_l, a2.len())?,
        field.values().to_vec(),
    )
}
