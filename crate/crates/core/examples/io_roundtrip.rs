//! Writes a field as CSV and binary and reads both back.

use wigsmooth::io::{read_field, write_field_binary, write_field_csv, write_file};
use wigsmooth::phase_space::{Axis, DistributionField};

fn main() -> wigsmooth::Result<()> {
    let axis = Axis::symmetric(4.0, 81)?;
    let field = DistributionField::from_fn(axis, axis, |q, p| {
        (-(q * q + p * p)).exp() * (2.0 * q).cos()
    })?;
    let dir = std::env::temp_dir();
    let csv = dir.join("wigsmooth_roundtrip.csv");
    let bin = dir.join("wigsmooth_roundtrip.bin");
    write_file(&csv, |w| write_field_csv(&field, w))?;
    write_file(&bin, |w| write_field_binary(&field, w))?;
    for path in [&csv, &bin] {
        let back = read_field(path)?;
        let bytes = std::fs::metadata(path)?.len();
        println!(
            "{}: {bytes} bytes, identical = {}",
            path.display(),
            back.values() == field.values()
        );
    }
    Ok(())
}
