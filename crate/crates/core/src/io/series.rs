use std::io::{BufRead, Write};

use crate::classical::EmissionPoint;
use crate::error::{Error, Result};

/// Two-column CSV `t,ddot_d`.
pub fn write_dipole_csv<W: Write>(times: &[f64], values: &[f64], mut w: W) -> Result<()> {
    writeln!(w, "t,ddot_d")?;
    for (t, v) in times.iter().zip(values) {
        writeln!(w, "{t},{v}")?;
    }
    Ok(())
}

pub fn read_dipole_csv<R: BufRead>(r: R) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || (k == 0 && line.starts_with('t')) || line.starts_with('#') {
            continue;
        }
        let mut it = line.split(',');
        let mut next = || -> Result<f64> {
            let tok = it
                .next()
                .ok_or_else(|| Error::Format(format!("line {}: missing column", k + 1)))?;
            tok.trim()
                .parse()
                .map_err(|_| Error::Format(format!("line {}: bad number {tok:?}", k + 1)))
        };
        times.push(next()?);
        values.push(next()?);
    }
    Ok((times, values))
}

/// CSV `t_emit,omega,return_index`.
pub fn write_emission_csv<W: Write>(points: &[EmissionPoint], mut w: W) -> Result<()> {
    writeln!(w, "t_emit,omega,return_index")?;
    for p in points {
        writeln!(w, "{},{},{}", p.t_emit, p.omega, p.return_index)?;
    }
    Ok(())
}
