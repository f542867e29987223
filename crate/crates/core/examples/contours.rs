//! Contour lines of a raw and a smoothed Wigner function, written as SVG and
//! CSV into the directory given on the command line (default: temp dir).

use std::path::PathBuf;

use wigsmooth::io::{write_contour_csv, write_contour_svg, write_file};
use wigsmooth::phase_space::{
    contour_extract, default_levels, gaussian_smooth, Axis, SmoothingWidths,
};
use wigsmooth::stationary::{square_well_wavefunction, wigner_transform, SquareWellSpec};

fn main() -> wigsmooth::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    let spec = SquareWellSpec::reference(3);
    let q = Axis::symmetric(20.0, 769)?;
    let wf = square_well_wavefunction(&spec, q)?;
    let raw = wigner_transform(&wf, q.lag_conjugate(spec.hbar, 384)?, spec.hbar)?;
    let smooth = gaussian_smooth(&raw, &SmoothingWidths::husimi(2.0, spec.hbar)?)?;

    for (name, field) in [("raw", &raw), ("husimi", &smooth)] {
        let set = contour_extract(field, &default_levels(field));
        let svg = dir.join(format!("well3_{name}.svg"));
        write_file(&svg, |w| {
            write_contour_svg(&set, field.axis1(), field.axis2(), ("q", "p"), w)
        })?;
        write_file(&dir.join(format!("well3_{name}.csv")), |w| {
            write_contour_csv(&set, w)
        })?;
        let closed: usize = (0..set.iter().count()).map(|k| set.closed_count(k)).sum();
        println!("{name}: {closed} closed contours -> {}", svg.display());
    }
    Ok(())
}
