//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use wigsmooth::phase_space::{Axis, DistributionField};
use wigsmooth::stationary::{
    square_well_wavefunction, wigner_transform, SquareWellSpec, WavefunctionGrid,
};

/// `|phi(p)|^2` with `phi(p) = (2 pi hbar)^(-1/2) sum_k h psi_k exp(-i p q_k / hbar)`,
/// summed directly.
pub fn momentum_density(wf: &WavefunctionGrid, p: &Axis, hbar: f64) -> Vec<f64> {
    let q = wf.axis();
    let h = q.spacing();
    p.values()
        .map(|pj| {
            let s: Complex64 = q
                .values()
                .zip(wf.values())
                .map(|(qk, z)| z * Complex64::from_polar(h, -pj * qk / hbar))
                .sum();
            s.norm_sqr() / (2.0 * PI * hbar)
        })
        .collect()
}

/// Closed-form `(x, v)` for an electron born at rest at the origin at `t0` in
/// `E(t) = e0 cos(w t)`.
pub fn free_flight(e0: f64, w: f64, t0: f64, t: f64) -> (f64, f64) {
    let a = e0 / (w * w);
    let x = a * ((w * t).cos() - (w * t0).cos()) + (e0 / w) * (w * t0).sin() * (t - t0);
    let v = -(e0 / w) * ((w * t).sin() - (w * t0).sin());
    (x, v)
}

/// First return of the closed-form trajectory by a fixed-step sign scan and
/// bisection; `None` if it does not come back within `horizon`.
pub fn first_return(e0: f64, w: f64, t0: f64, horizon: f64) -> Option<(f64, f64)> {
    let period = 2.0 * PI / w;
    let dt = period / 4000.0;
    let mut t = t0 + 1e-3 * period;
    let (mut x_prev, _) = free_flight(e0, w, t0, t);
    while t < t0 + horizon {
        let tn = t + dt;
        let (x, _) = free_flight(e0, w, t0, tn);
        if (x < 0.0) != (x_prev < 0.0) {
            let (mut a, mut b) = (t, tn);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if (free_flight(e0, w, t0, m).0 < 0.0) == (x_prev < 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            let tr = 0.5 * (a + b);
            let v = free_flight(e0, w, t0, tr).1;
            return Some((tr, 0.5 * v * v));
        }
        x_prev = x;
        t = tn;
    }
    None
}

/// Wigner field of the reference square-well state `n` on an `nq x np` grid
/// spanning the well exactly, with the full lag period in `p`.
pub fn square_well_field(n: u32, nq: usize, np: usize) -> (WavefunctionGrid, DistributionField) {
    square_well_field_on(n, 10.0, nq, np)
}

/// As [`square_well_field`] on `[-extent, extent]`.
pub fn square_well_field_on(
    n: u32,
    extent: f64,
    nq: usize,
    np: usize,
) -> (WavefunctionGrid, DistributionField) {
    let spec = SquareWellSpec::reference(n);
    let q = Axis::symmetric(extent, nq).unwrap();
    let wf = square_well_wavefunction(&spec, q).unwrap();
    let p = q.lag_conjugate(spec.hbar, np).unwrap();
    let w = wigner_transform(&wf, p, spec.hbar).unwrap();
    (wf, w)
}

/// Max absolute difference relative to the max absolute value of `b`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / scale
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// A single deterministic Gaussian-mixture field from `params`, each entry
/// `(weight, c1, c2, s1, s2)`.
pub fn mixture(
    axis1: Axis,
    axis2: Axis,
    params: &[(f64, f64, f64, f64, f64)],
) -> DistributionField {
    DistributionField::from_fn(axis1, axis2, |x, y| {
        params
            .iter()
            .map(|&(a, c1, c2, s1, s2)| {
                a * (-(x - c1).powi(2) / (2.0 * s1 * s1) - (y - c2).powi(2) / (2.0 * s2 * s2)).exp()
            })
            .sum()
    })
    .unwrap()
}
