//! Short Crank-Nicolson run of a soft-core atom in a flat-top pulse, then the
//! harmonic spectrum of the dipole acceleration.
//!
//! cargo run --release --example hhg_spectrum

use wigsmooth::tdse::{
    ground_state, propagate, PowerSpectrum, PropagationConfig, PulseSpec, SoftCoreSpec,
};
use wigsmooth::Axis;

fn main() -> wigsmooth::Result<()> {
    let (e0, w) = (0.0924, 0.05696);
    let pulse = PulseSpec::flat_top(e0, w, 4.0, 1.0)?;
    let atom = SoftCoreSpec::neon();
    let axis = Axis::symmetric(150.0, 1536)?;
    let (psi0, energy) = ground_state(&atom, axis)?;
    println!("ground state E0 = {energy:.5}");

    let (_, t_end) = pulse.support().expect("finite pulse");
    let cfg = PropagationConfig::with_default_absorber(axis, 0.05, 0.0, t_end)?;
    let rec = propagate(&psi0, &atom, &pulse, &cfg)?;
    println!(
        "{} samples, final norm {:.4}",
        rec.times.len(),
        rec.norm.last().unwrap()
    );

    let spectrum = PowerSpectrum::new(&rec.ddot_d, rec.stride());
    let predicted = (-energy + 3.17 * pulse.ponderomotive_energy()) / w;
    for h in (1..=61).step_by(6) {
        println!("H{h:<3} {:.3e}", spectrum.harmonic_peak(w, h as f64));
    }
    match spectrum.cutoff_harmonic(w, 11, 1e-2) {
        Some(h) => println!("cutoff H{h}, classical estimate {predicted:.1}"),
        None => println!("no plateau found, classical estimate {predicted:.1}"),
    }
    Ok(())
}
