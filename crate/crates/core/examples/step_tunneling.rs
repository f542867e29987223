//! Scattering state below a potential step: full reflection and an
//! exponential tail inside the barrier, read off the Wigner marginal.

use wigsmooth::phase_space::{gaussian_smooth, AxisId, SmoothingWidths};
use wigsmooth::stationary::{tapered_step_wavefunction, wigner_transform, StepPotentialSpec};

fn main() -> wigsmooth::Result<()> {
    let spec = StepPotentialSpec::reference();
    println!(
        "E = {}, V0 = {}, k = {:.4}, kappa = {:.4}",
        spec.energy,
        spec.v0,
        spec.k(),
        spec.kappa()
    );
    println!("|R| = {:.12}", spec.reflection().norm());

    let wf = tapered_step_wavefunction(&spec, 0.1)?;
    let p = wf.axis().lag_conjugate(spec.hbar, 1025)?;
    let w = wigner_transform(&wf, p, spec.hbar)?;
    let rho = w.marginal(AxisId::First);
    let q = w.axis1();
    let at = |x: f64| rho[q.nearest_index(x)];
    let slope = (at(3.0).ln() - at(0.5).ln()) / 2.5;
    println!(
        "log-slope of the barrier tail: {slope:.4} (expected {:.4})",
        -2.0 * spec.kappa()
    );

    let g = gaussian_smooth(&w, &SmoothingWidths::new(2.236, 1.0, spec.hbar)?)?;
    println!("smoothed at (2.236, 1): min/max {:+.2e}", g.min() / g.max());
    Ok(())
}
