//! Classical recollision map: return energies against return time for an
//! electron born at rest in a cosine field, and the 3.17 Up maximum.

use std::f64::consts::TAU;

use wigsmooth::classical::emission_events;
use wigsmooth::phase_space::Axis;
use wigsmooth::tdse::PulseSpec;

fn main() -> wigsmooth::Result<()> {
    let (e0, w) = (0.0924, 0.05696);
    let pulse = PulseSpec::continuous(e0, w)?;
    let up = pulse.ponderomotive_energy();
    let period = TAU / w;
    let births = Axis::new(0.0, 0.5 * period, 2001)?;
    let events = emission_events(&pulse, &births, 3);

    for k in 1..=3 {
        let best = events
            .iter()
            .filter(|e| e.return_index == k)
            .max_by(|a, b| a.return_kinetic_energy.total_cmp(&b.return_kinetic_energy));
        if let Some(e) = best {
            println!(
                "return {k}: max K = {:.4} Up, born at {:.3} T, back at {:.3} T",
                e.return_kinetic_energy / up,
                e.birth_time / period,
                e.return_time / period
            );
        }
    }
    println!("{} events from {} births", events.len(), births.len());
    Ok(())
}
