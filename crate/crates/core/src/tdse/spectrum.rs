use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rustfft::FftPlanner;

/// One-sided power spectrum `|sum_k w_k a_k exp(i omega t_k) dt|^2` of a
/// uniformly sampled signal under a Hann window.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub omega: Vec<f64>,
    pub power: Vec<f64>,
}

impl PowerSpectrum {
    pub fn new(samples: &[f64], dt: f64) -> Self {
        let n = samples.len();
        let m = n.next_power_of_two() * 4;
        let mut buf: Vec<Complex64> = samples
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let w = if n > 1 {
                    (PI * k as f64 / (n - 1) as f64).sin().powi(2)
                } else {
                    1.0
                };
                Complex64::new(a * w * dt, 0.0)
            })
            .collect();
        buf.resize(m, Complex64::default());
        FftPlanner::new().plan_fft_forward(m).process(&mut buf);
        let dw = TAU / (m as f64 * dt);
        let half = m / 2 + 1;
        PowerSpectrum {
            omega: (0..half).map(|k| k as f64 * dw).collect(),
            power: buf[..half].iter().map(|z| z.norm_sqr()).collect(),
        }
    }

    /// Peak power within half an order of harmonic `order`.
    pub fn harmonic_peak(&self, omega_l: f64, order: f64) -> f64 {
        let (lo, hi) = ((order - 0.5) * omega_l, (order + 0.5) * omega_l);
        self.omega
            .iter()
            .zip(&self.power)
            .filter(|(w, _)| **w >= lo && **w < hi)
            .fold(0.0, |m, (_, p)| m.max(*p))
    }

    /// Highest odd harmonic whose peak stays within `threshold` of the
    /// strongest odd harmonic at or above `min_order`.
    pub fn cutoff_harmonic(&self, omega_l: f64, min_order: u32, threshold: f64) -> Option<u32> {
        let top = (self.omega.last()? / omega_l).floor() as u32;
        let odd: Vec<(u32, f64)> = (min_order..top)
            .filter(|h| h % 2 == 1)
            .map(|h| (h, self.harmonic_peak(omega_l, h as f64)))
            .collect();
        let best = odd.iter().fold(0.0f64, |m, &(_, p)| m.max(p));
        if best == 0.0 {
            return None;
        }
        odd.iter()
            .rev()
            .find(|&&(_, p)| p >= threshold * best)
            .map(|&(h, _)| h)
    }
}
