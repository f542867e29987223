//! Separable Gaussian smoothing of distribution fields.
//!
//! The smoothed field is the double convolution of the input with a
//! normalized two-dimensional Gaussian of widths `(sigma1, sigma2)`,
//! evaluated on the input grid with zero padding beyond its edges. Each axis
//! is handled by its own 1D pass. Kernels are truncated at `KERNEL_RADIUS`
//! standard deviations and normalized on the grid, so a vanishing width
//! degenerates to the identity and total mass is preserved for fields that
//! decay at the edges.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::field::DistributionField;
use crate::error::{Error, Result};

/// Kernel half-width in units of sigma.
pub const KERNEL_RADIUS: f64 = 6.0;

/// Kernels longer than this many samples are applied by FFT under
/// [`ConvolutionMethod::Auto`].
pub const FFT_THRESHOLD: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Physical,
    Unphysical,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Physical => "physical",
            Regime::Unphysical => "unphysical",
        })
    }
}

/// Smoothing widths along the two axes plus the Planck scale of the space
/// (`hbar` for position-momentum, `1` for time-frequency).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingWidths {
    pub sigma1: f64,
    pub sigma2: f64,
    pub planck_scale: f64,
}

impl SmoothingWidths {
    pub fn new(sigma1: f64, sigma2: f64, planck_scale: f64) -> Result<Self> {
        let ok = |s: f64| s.is_finite() && s > 0.0;
        if !ok(sigma1) || !ok(sigma2) || !ok(planck_scale) {
            return Err(Error::InvalidWidths(format!(
                "sigma1 = {sigma1}, sigma2 = {sigma2}, planck scale = {planck_scale} must all be positive"
            )));
        }
        Ok(SmoothingWidths {
            sigma1,
            sigma2,
            planck_scale,
        })
    }

    /// Minimum-uncertainty pair with the given first width.
    pub fn husimi(sigma1: f64, planck_scale: f64) -> Result<Self> {
        SmoothingWidths::new(sigma1, planck_scale / (2.0 * sigma1), planck_scale)
            .map(Self::onto_boundary)
    }

    /// Widths equivalent to a coherent-state parameter `kappa`:
    /// `sigma1 = sqrt(scale / 2 kappa)`, `sigma2 = sqrt(scale kappa / 2)`.
    pub fn from_kappa(kappa: f64, planck_scale: f64) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        SmoothingWidths::new(
            (planck_scale / (2.0 * kappa)).sqrt(),
            (planck_scale * kappa / 2.0).sqrt(),
            planck_scale,
        )
        .map(Self::onto_boundary)
    }

    // Rounding can leave a minimum-uncertainty pair an ulp below the bound.
    fn onto_boundary(mut self) -> Self {
        while self.sigma1 * self.sigma2 < self.planck_scale / 2.0 {
            self.sigma2 = self.sigma2.next_up();
        }
        self
    }

    pub fn product(&self) -> f64 {
        self.sigma1 * self.sigma2
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self)
    }
}

/// Physical iff `sigma1 * sigma2 >= planck_scale / 2`, compared exactly.
pub fn classify_regime(widths: &SmoothingWidths) -> Regime {
    if widths.sigma1 * widths.sigma2 >= widths.planck_scale / 2.0 {
        Regime::Physical
    } else {
        Regime::Unphysical
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConvolutionMethod {
    /// Direct summation for short kernels, FFT beyond [`FFT_THRESHOLD`].
    #[default]
    Auto,
    Direct,
    Fft,
}

pub fn gaussian_smooth(
    field: &DistributionField,
    widths: &SmoothingWidths,
) -> Result<DistributionField> {
    gaussian_smooth_with(field, widths, ConvolutionMethod::Auto)
}

pub fn gaussian_smooth_with(
    field: &DistributionField,
    widths: &SmoothingWidths,
    method: ConvolutionMethod,
) -> Result<DistributionField> {
    let widths = SmoothingWidths::new(widths.sigma1, widths.sigma2, widths.planck_scale)?;
    let (a1, a2) = (*field.axis1(), *field.axis2());
    for (sigma, axis) in [(widths.sigma1, a1), (widths.sigma2, a2)] {
        // +-5 sigma wider than ten grid spans
        if 10.0 * sigma > 10.0 * axis.span() {
            return Err(Error::KernelTooWide {
                sigma,
                span: axis.span(),
            });
        }
    }
    let (n1, n2) = field.shape();
    let k1 = gaussian_kernel(widths.sigma1, a1.spacing());
    let k2 = gaussian_kernel(widths.sigma2, a2.spacing());

    let mut values = field.values().to_vec();
    convolve_rows(&mut values, n2, &k2, method);
    let mut t = transpose(&values, n1, n2);
    convolve_rows(&mut t, n1, &k1, method);
    let values = transpose(&t, n2, n1);
    DistributionField::new(a1, a2, values)
}

/// Grid-normalized Gaussian weights for offsets `-r..=r`.
pub fn gaussian_kernel(sigma: f64, spacing: f64) -> Vec<f64> {
    let r = (KERNEL_RADIUS * sigma / spacing).ceil() as usize;
    let mut w: Vec<f64> = (0..=2 * r)
        .map(|k| {
            let x = (k as f64 - r as f64) * spacing;
            (-x * x / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    w
}

fn transpose(values: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    out.par_chunks_mut(rows).enumerate().for_each(|(j, col)| {
        for (i, o) in col.iter_mut().enumerate() {
            *o = values[i * cols + j];
        }
    });
    out
}

fn convolve_rows(values: &mut [f64], len: usize, kernel: &[f64], method: ConvolutionMethod) {
    let use_fft = match method {
        ConvolutionMethod::Direct => false,
        ConvolutionMethod::Fft => true,
        ConvolutionMethod::Auto => kernel.len() > FFT_THRESHOLD,
    };
    if use_fft {
        let conv = FftConvolver::new(len, kernel);
        values.par_chunks_mut(len).for_each_init(
            || {
                (
                    vec![Complex64::default(); conv.size],
                    vec![Complex64::default(); conv.scratch_len],
                )
            },
            |(buf, scratch), row| conv.apply(row, buf, scratch),
        );
    } else {
        values.par_chunks_mut(len).for_each_init(
            || vec![0.0; len],
            |tmp, row| {
                convolve_direct(row, kernel, tmp);
                row.copy_from_slice(tmp);
            },
        );
    }
}

/// `out[j] = sum_k kernel[k] * row[j + r - k]`, zero outside the row.
fn convolve_direct(row: &[f64], kernel: &[f64], out: &mut [f64]) {
    let n = row.len() as isize;
    let r = (kernel.len() / 2) as isize;
    for (j, o) in out.iter_mut().enumerate() {
        let j = j as isize;
        let lo = (j + r - n + 1).max(0);
        let hi = (j + r).min(2 * r);
        let mut acc = 0.0;
        for k in lo..=hi {
            acc += kernel[k as usize] * row[(j + r - k) as usize];
        }
        *o = acc;
    }
}

struct FftConvolver {
    size: usize,
    radius: usize,
    scratch_len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    kernel_hat: Vec<Complex64>,
}

impl FftConvolver {
    fn new(len: usize, kernel: &[f64]) -> Self {
        let size = (len + kernel.len() - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);
        let mut kernel_hat = vec![Complex64::default(); size];
        for (k, w) in kernel_hat.iter_mut().zip(kernel) {
            k.re = *w / size as f64;
        }
        forward.process(&mut kernel_hat);
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        FftConvolver {
            size,
            radius: kernel.len() / 2,
            scratch_len,
            forward,
            inverse,
            kernel_hat,
        }
    }

    fn apply(&self, row: &mut [f64], buf: &mut [Complex64], scratch: &mut [Complex64]) {
        buf.iter_mut().for_each(|b| *b = Complex64::default());
        for (b, v) in buf.iter_mut().zip(row.iter()) {
            b.re = *v;
        }
        self.forward.process_with_scratch(buf, scratch);
        for (b, k) in buf.iter_mut().zip(&self.kernel_hat) {
            *b *= k;
        }
        self.inverse.process_with_scratch(buf, scratch);
        for (j, v) in row.iter_mut().enumerate() {
            *v = buf[j + self.radius].re;
        }
    }
}
