use num_complex::Complex64;

use super::potential::Potential;
use super::tridiag::solve_tridiagonal;
use crate::error::{Error, Result};
use crate::phase_space::Axis;
use crate::stationary::{WavefunctionGrid, EDGE_TOLERANCE};

/// Discrete `H0 = -(1/2) d^2/dx^2 + V` with the 3-point Laplacian and
/// Dirichlet ends: returns the diagonal and the constant off-diagonal.
pub fn hamiltonian_tridiagonal(potential: &dyn Potential, axis: &Axis) -> (Vec<f64>, f64) {
    let h2 = axis.spacing().powi(2);
    let diag = axis
        .values()
        .map(|x| 1.0 / h2 + potential.value(x))
        .collect();
    (diag, -0.5 / h2)
}

/// Number of eigenvalues below `lambda` (Sturm sequence count).
fn count_below(diag: &[f64], off: f64, lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, d) in diag.iter().enumerate() {
        q = d - lambda - if i == 0 { 0.0 } else { off * off / q };
        if q == 0.0 {
            q = f64::EPSILON * (d.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest eigenpair of the discretized `H0`. The state is real, positive and
/// normalized; the energy is the Rayleigh quotient of the returned vector.
pub fn ground_state(potential: &dyn Potential, axis: Axis) -> Result<(WavefunctionGrid, f64)> {
    let (diag, off) = hamiltonian_tridiagonal(potential, &axis);
    let n = diag.len();
    if n < 3 {
        return Err(Error::InvalidParameter(
            "ground state needs at least 3 grid points".into(),
        ));
    }
    let spread = 2.0 * off.abs();
    let mut lo = diag.iter().fold(f64::INFINITY, |m, &d| m.min(d)) - spread;
    let mut hi = diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d)) + spread;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(&diag, off, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let shift = lo;

    let sub = vec![off; n];
    let shifted: Vec<f64> = diag.iter().map(|d| d - shift).collect();
    let mut v = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut scratch = Vec::new();
    for _ in 0..4 {
        solve_tridiagonal(&sub, &shifted, &sub, &v, &mut next, &mut scratch);
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidParameter(
                "inverse iteration failed to converge".into(),
            ));
        }
        v.iter_mut().zip(&next).for_each(|(a, b)| *a = b / norm);
    }
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }

    let mut hv = 0.0;
    for i in 0..n {
        let mut y = diag[i] * v[i];
        if i > 0 {
            y += off * v[i - 1];
        }
        if i + 1 < n {
            y += off * v[i + 1];
        }
        hv += v[i] * y;
    }
    let energy = hv / v.iter().map(|x| x * x).sum::<f64>();

    let wf = WavefunctionGrid::new(
        axis,
        v.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
    )?
    .normalized()?;
    let ratio = wf.edge_ratio();
    if ratio > EDGE_TOLERANCE {
        return Err(Error::InvalidParameter(format!(
            "axis [{}, {}] too narrow for the ground state (edge/max = {ratio:.3e})",
            axis.min(),
            axis.max()
        )));
    }
    Ok((wf, energy))
}
