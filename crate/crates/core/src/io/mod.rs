//! Field, series, contour and emission-map serialization.

mod contour;
mod field;
mod series;
mod svg;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

pub use contour::write_contour_csv;
pub use field::{
    read_field_binary, read_field_csv, read_series_binary, write_field_binary, write_field_csv,
    write_series_binary, MAGIC,
};
pub use series::{read_dipole_csv, write_dipole_csv, write_emission_csv};
pub use svg::{write_contour_svg, write_emission_svg};

use crate::error::Result;
use crate::phase_space::DistributionField;

/// Creates `path` and hands a buffered writer to `f`.
pub fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

/// Reads a field, choosing the format from the magic bytes.
pub fn read_field(path: &Path) -> Result<DistributionField> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        read_field_binary(&bytes[..])
    } else {
        read_field_csv(BufReader::new(&bytes[..]))
    }
}
