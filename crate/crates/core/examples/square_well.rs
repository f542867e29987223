//! Wigner function of an infinite-well eigenstate: extrema, moments and
//! agreement of the position marginal with |psi|^2.
//!
//! cargo run --release --example square_well -- 5

use wigsmooth::phase_space::{Axis, AxisId};
use wigsmooth::stationary::{square_well_wavefunction, wigner_transform, SquareWellSpec};

fn main() -> wigsmooth::Result<()> {
    let n: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let spec = SquareWellSpec::reference(n);
    let q = Axis::symmetric(spec.half_width, 512)?;
    let wf = square_well_wavefunction(&spec, q)?;
    let p = q.lag_conjugate(spec.hbar, 512)?;
    let w = wigner_transform(&wf, p, spec.hbar)?;

    let m = w.moments()?;
    println!("state n = {n}, E = {:.6}", spec.energy());
    println!(
        "W range [{:.4}, {:.4}], mass {:.8}",
        w.min(),
        w.max(),
        m.total_mass
    );
    println!("dq = {:.4} (exact {:.4})", m.delta1, spec.delta_q());
    println!("dp = {:.4} (exact {:.4})", m.delta2, spec.delta_p());
    println!("dq dp = {:.4}", m.delta1 * m.delta2);

    let rho = w.marginal(AxisId::First);
    let err = rho
        .iter()
        .zip(wf.density())
        .fold(0.0f64, |e, (a, b)| e.max((a - b).abs()));
    println!("max |marginal - |psi|^2| = {err:.2e}");
    Ok(())
}
