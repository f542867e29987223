use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::WavefunctionGrid;
use crate::error::{Error, Result};
use crate::phase_space::lag::{symmetric_lag_rows, LagTransform, LagWorkspace};
use crate::phase_space::{Axis, DistributionField, LagMethod};

/// Largest admissible `|psi(edge)| / max |psi|`.
pub const EDGE_TOLERANCE: f64 = 1e-10;

// Gaussian windows are cut where the exponent exceeds this.
const WINDOW_EXPONENT_CUT: f64 = 60.0;

/// Wigner field together with the largest discarded imaginary part.
#[derive(Debug, Clone)]
pub struct WignerOutput {
    pub field: DistributionField,
    pub imaginary_residue: f64,
}

pub(crate) fn check_decay(wf: &WavefunctionGrid) -> Result<()> {
    let ratio = wf.edge_ratio();
    if ratio > EDGE_TOLERANCE {
        return Err(Error::NotDecayed { ratio });
    }
    Ok(())
}

/// Momentum bound `pi hbar / 2h` beyond which the lag phase aliases.
pub fn momentum_bound(position: &Axis, hbar: f64) -> f64 {
    PI * hbar / (2.0 * position.spacing())
}

pub(crate) fn check_frequency_axis(p_axis: &Axis, bound: f64) -> Result<()> {
    let max = p_axis.min().abs().max(p_axis.max().abs());
    if max > bound * (1.0 + 1e-9) {
        return Err(Error::Aliasing { max, bound });
    }
    Ok(())
}

/// `W(q, p) = (1/pi hbar) integral dx exp(-2ipx/hbar) psi*(q - x) psi(q + x)`
/// with the lag `x` stepping over the position grid. Rows are the position
/// samples of `wf`, columns follow `p_axis`.
pub fn wigner_transform(
    wf: &WavefunctionGrid,
    p_axis: Axis,
    hbar: f64,
) -> Result<DistributionField> {
    let out = wigner_transform_with(wf, p_axis, hbar, LagMethod::Auto)?;
    let scale = out.field.max_abs();
    if out.imaginary_residue > 1e-10 * scale {
        return Err(Error::InvalidParameter(format!(
            "Wigner quadrature left an imaginary part {:.3e} (max |W| = {scale:.3e})",
            out.imaginary_residue
        )));
    }
    Ok(out.field)
}

pub fn wigner_transform_with(
    wf: &WavefunctionGrid,
    p_axis: Axis,
    hbar: f64,
    method: LagMethod,
) -> Result<WignerOutput> {
    if !(hbar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    check_decay(wf)?;
    let q_axis = *wf.axis();
    check_frequency_axis(&p_axis, momentum_bound(&q_axis, hbar))?;
    let h = q_axis.spacing();
    let lag = LagTransform::new(p_axis, 2.0 * h / hbar, method);
    let centers: Vec<usize> = (0..q_axis.len()).collect();
    let (values, imaginary_residue) =
        symmetric_lag_rows(wf.values(), &centers, &lag, h / (PI * hbar));
    let field = DistributionField::new(q_axis, p_axis, values)?;
    Ok(WignerOutput {
        field,
        imaginary_residue,
    })
}

/// Coherent-state projection
/// `H(q, p) = (1/2 pi hbar) sqrt(kappa / pi hbar) |integral dx exp(-kappa (x-q)^2 / 2 hbar - ipx/hbar) psi(x)|^2`
/// evaluated on `axes = (q_axis, p_axis)`.
pub fn husimi_direct(
    wf: &WavefunctionGrid,
    kappa: f64,
    axes: (Axis, Axis),
    hbar: f64,
) -> Result<DistributionField> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    if !(hbar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    check_decay(wf)?;
    let (q_axis, p_axis) = axes;
    let x_axis = *wf.axis();
    let h = x_axis.spacing();
    let lag = LagTransform::new(p_axis, h / hbar, LagMethod::Auto);
    let prefactor = (kappa / (PI * hbar)).sqrt() / (2.0 * PI * hbar) * h * h;
    gaussian_projection(
        wf.values(),
        x_axis,
        q_axis,
        p_axis,
        &lag,
        kappa / (2.0 * hbar),
        prefactor,
    )
}

/// Rows over `centers`, columns `prefactor * |sum_k g(x_k - c) f_k exp(-i theta w k)|^2`
/// with `g(u) = exp(-alpha u^2)`; shared by the position and time Husimi forms.
pub(crate) fn gaussian_projection<T>(
    samples: &[T],
    sample_axis: Axis,
    centers: Axis,
    freqs: Axis,
    lag: &LagTransform,
    alpha: f64,
    prefactor: f64,
) -> Result<DistributionField>
where
    T: Copy + Into<Complex64> + Sync,
{
    let h = sample_axis.spacing();
    let reach = (WINDOW_EXPONENT_CUT / alpha).sqrt();
    let n = samples.len();
    let nw = freqs.len();
    let mut values = vec![0.0; centers.len() * nw];
    values.par_chunks_mut(nw).enumerate().for_each_init(
        || {
            (
                LagWorkspace::default(),
                Vec::new(),
                vec![Complex64::default(); nw],
            )
        },
        |(ws, coeffs, sums), (i, row)| {
            let c = centers.value(i);
            let lo = ((c - reach - sample_axis.min()) / h)
                .ceil()
                .clamp(0.0, n as f64) as usize;
            let hi =
                (((c + reach - sample_axis.min()) / h).floor() + 1.0).clamp(0.0, n as f64) as usize;
            if lo >= hi {
                row.iter_mut().for_each(|v| *v = 0.0);
                return;
            }
            coeffs.clear();
            coeffs.extend((lo..hi).map(|k| {
                let u = sample_axis.value(k) - c;
                samples[k].into() * (-alpha * u * u).exp()
            }));
            lag.eval(coeffs, lo as isize, sums, ws);
            for (v, s) in row.iter_mut().zip(sums.iter()) {
                *v = prefactor * s.norm_sqr();
            }
        },
    );
    DistributionField::new(centers, freqs, values)
}
