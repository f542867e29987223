//! Evaluation of lag sums `S(w) = sum_m c_m exp(-i theta w m)` on a uniform
//! frequency axis.
//!
//! When `theta * spacing(axis) = 2 pi / N` for an integer `N` the sum is a
//! length-`N` DFT after folding the coefficients modulo `N`; otherwise it is
//! summed directly. Both routes evaluate the same trigonometric polynomial.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::axis::Axis;

const MAX_FFT_LEN: usize = 1 << 22;
const RESEED: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LagMethod {
    /// FFT whenever the axis is commensurate with the lag lattice.
    #[default]
    Auto,
    Direct,
}

pub(crate) struct LagTransform {
    axis: Axis,
    theta: f64,
    fft: Option<(usize, Arc<dyn Fft<f64>>)>,
}

#[derive(Default)]
pub(crate) struct LagWorkspace {
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl LagTransform {
    pub fn new(axis: Axis, theta: f64, method: LagMethod) -> Self {
        let fft = match method {
            LagMethod::Direct => None,
            LagMethod::Auto => commensurate_length(theta * axis.spacing()).map(|n| {
                let plan = FftPlanner::new().plan_fft_forward(n);
                (n, plan)
            }),
        };
        LagTransform { axis, theta, fft }
    }

    #[cfg(test)]
    pub fn uses_fft(&self) -> bool {
        self.fft.is_some()
    }

    /// Writes `S(w_j)` for every axis point into `out`. `coeffs[k]` is the
    /// coefficient of lag `m = m_start + k`.
    pub fn eval(
        &self,
        coeffs: &[Complex64],
        m_start: isize,
        out: &mut [Complex64],
        ws: &mut LagWorkspace,
    ) {
        debug_assert_eq!(out.len(), self.axis.len());
        match &self.fft {
            Some((n, plan)) => self.eval_fft(*n, plan.as_ref(), coeffs, m_start, out, ws),
            None => self.eval_direct(coeffs, m_start, out),
        }
    }

    fn eval_fft(
        &self,
        n: usize,
        plan: &dyn Fft<f64>,
        coeffs: &[Complex64],
        m_start: isize,
        out: &mut [Complex64],
        ws: &mut LagWorkspace,
    ) {
        ws.buf.clear();
        ws.buf.resize(n, Complex64::default());
        ws.scratch
            .resize(plan.get_inplace_scratch_len(), Complex64::default());
        // exp(-i theta w0 m), reduced modulo a full turn before evaluation
        let turns = self.theta * self.axis.min() / TAU;
        for (k, c) in coeffs.iter().enumerate() {
            let m = m_start + k as isize;
            let frac = (turns * m as f64).rem_euclid(1.0);
            let r = m.rem_euclid(n as isize) as usize;
            ws.buf[r] += c * Complex64::from_polar(1.0, -TAU * frac);
        }
        plan.process_with_scratch(&mut ws.buf, &mut ws.scratch);
        for (j, o) in out.iter_mut().enumerate() {
            *o = ws.buf[j % n];
        }
    }

    fn eval_direct(&self, coeffs: &[Complex64], m_start: isize, out: &mut [Complex64]) {
        for (j, o) in out.iter_mut().enumerate() {
            let phase = -self.theta * self.axis.value(j);
            let step = Complex64::from_polar(1.0, phase);
            let mut acc = Complex64::default();
            let mut w = Complex64::default();
            for (k, c) in coeffs.iter().enumerate() {
                if k % RESEED == 0 {
                    w = Complex64::from_polar(1.0, phase * (m_start + k as isize) as f64);
                }
                acc += c * w;
                w *= step;
            }
            *o = acc;
        }
    }
}

/// Symmetric-lag sums `prefactor * sum_m conj(f[c-m]) f[c+m] exp(-i theta w m)`
/// for every centre index in `centers`, over the lags that stay inside `f`.
/// Returns row-major real parts and the largest discarded imaginary part.
pub(crate) fn symmetric_lag_rows(
    samples: &[Complex64],
    centers: &[usize],
    lag: &LagTransform,
    prefactor: f64,
) -> (Vec<f64>, f64) {
    let n = samples.len();
    let nw = lag.axis.len();
    let mut values = vec![0.0; centers.len() * nw];
    let residue = values
        .par_chunks_mut(nw)
        .zip(centers.par_iter())
        .map_init(
            || {
                (
                    LagWorkspace::default(),
                    Vec::new(),
                    vec![Complex64::default(); nw],
                )
            },
            |(ws, coeffs, sums), (row, &i)| {
                let reach = i.min(n - 1 - i);
                coeffs.clear();
                coeffs.extend(
                    (0..=2 * reach).map(|k| samples[i + reach - k].conj() * samples[i + k - reach]),
                );
                lag.eval(coeffs, -(reach as isize), sums, ws);
                let mut residue = 0.0f64;
                for (w, s) in row.iter_mut().zip(sums.iter()) {
                    *w = prefactor * s.re;
                    residue = residue.max((prefactor * s.im).abs());
                }
                residue
            },
        )
        .reduce(|| 0.0, f64::max);
    (values, residue)
}

fn commensurate_length(phase_step: f64) -> Option<usize> {
    if !(phase_step > 0.0) {
        return None;
    }
    let n = TAU / phase_step;
    let rounded = n.round();
    if rounded >= 1.0 && (n - rounded).abs() <= 1e-9 * n && (rounded as usize) <= MAX_FFT_LEN {
        Some(rounded as usize)
    } else {
        None
    }
}
