//! Wigner-Ville and Husimi maps of a linear chirp: the Wigner-Ville ridge
//! follows the instantaneous frequency exactly and the Husimi map is its
//! smoothed, nonnegative version.

use std::f64::consts::PI;

use wigsmooth::phase_space::{gaussian_smooth, Axis, SmoothingWidths};
use wigsmooth::time_frequency::{husimi_tf, wigner_ville, Signal};

fn main() -> wigsmooth::Result<()> {
    let (dt, n) = (0.05, 1200);
    let (w0, rate) = (3.0, 0.1);
    let envelope = |t: f64| (-(t - 30.0).powi(2) / 200.0).exp();
    let values = (0..n)
        .map(|k| k as f64 * dt)
        .map(|t| envelope(t) * (w0 * t + 0.5 * rate * t * t).cos())
        .collect();
    let signal = Signal::new(0.0, dt, values)?;

    let omega = Axis::symmetric(PI / (2.0 * dt), 2049)?;
    let t_axis = signal.sub_axis(200, 1000, 100)?;
    let wv = wigner_ville(&signal, omega, t_axis)?;
    let kappa = 0.5;
    let h = husimi_tf(&signal, kappa, (t_axis, omega))?;
    println!("   t   | w_inst | WV ridge | Husimi ridge");
    for i in 0..t_axis.len() {
        let t = t_axis.value(i);
        let ridge = |row: &[f64]| {
            let j = (0..row.len())
                .filter(|&j| omega.value(j) > 0.5)
                .max_by(|&a, &b| row[a].total_cmp(&row[b]))
                .unwrap();
            omega.value(j)
        };
        println!(
            "{t:6.1} | {:6.3} | {:8.3} | {:8.3}",
            w0 + rate * t,
            ridge(wv.row(i)),
            ridge(h.row(i))
        );
    }
    println!(
        "Wigner-Ville min/max {:+.3}, Husimi min {:.1e}",
        wv.min() / wv.max(),
        h.min()
    );

    let full = wigner_ville(&signal, omega, signal.time_axis())?;
    let smoothed = gaussian_smooth(&full, &SmoothingWidths::from_kappa(kappa, 1.0)?)?;
    println!(
        "smoothed Wigner-Ville min/max {:+.2e}",
        smoothed.min() / smoothed.max()
    );
    Ok(())
}
