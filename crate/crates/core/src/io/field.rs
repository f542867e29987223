use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::phase_space::{Axis, DistributionField};

pub const MAGIC: &[u8; 12] = b"WIGFIELD0001";

fn axis_header(a: &Axis) -> String {
    format!("{} {} {}", a.min(), a.max(), a.len())
}

/// Header `# axis1 min max n ; axis2 min max n`, then one line per `axis2`
/// sample holding the values along `axis1`.
pub fn write_field_csv<W: Write>(field: &DistributionField, mut w: W) -> Result<()> {
    writeln!(
        w,
        "# axis1 {} ; axis2 {}",
        axis_header(field.axis1()),
        axis_header(field.axis2())
    )?;
    let (n1, n2) = field.shape();
    let mut line = String::new();
    for j in 0..n2 {
        line.clear();
        for i in 0..n1 {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&field.get(i, j).to_string());
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

fn parse_axis(tokens: &[&str]) -> Result<Axis> {
    let bad = || Error::Format(format!("bad axis record {:?}", tokens.join(" ")));
    if tokens.len() != 4 {
        return Err(bad());
    }
    let min: f64 = tokens[1].parse().map_err(|_| bad())?;
    let max: f64 = tokens[2].parse().map_err(|_| bad())?;
    let n: usize = tokens[3].parse().map_err(|_| bad())?;
    Axis::new(min, max, n).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_field_csv<R: BufRead>(r: R) -> Result<DistributionField> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty field file".into()))??;
    let body = header
        .strip_prefix('#')
        .ok_or_else(|| Error::Format("missing axis header".into()))?;
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != 2 {
        return Err(Error::Format(format!("bad axis header {header:?}")));
    }
    let a1 = parse_axis(&parts[0].split_whitespace().collect::<Vec<_>>())?;
    let a2 = parse_axis(&parts[1].split_whitespace().collect::<Vec<_>>())?;
    let (n1, n2) = (a1.len(), a2.len());
    let mut values = vec![0.0; n1 * n2];
    let mut j = 0;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if j >= n2 {
            return Err(Error::Format(format!("more than {n2} data rows")));
        }
        let mut i = 0;
        for tok in line.split(',') {
            if i >= n1 {
                return Err(Error::Format(format!("row {j} has more than {n1} values")));
            }
            values[i * n2 + j] = tok
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("bad number {tok:?}")))?;
            i += 1;
        }
        if i != n1 {
            return Err(Error::Format(format!(
                "row {j} has {i} values, expected {n1}"
            )));
        }
        j += 1;
    }
    if j != n2 {
        return Err(Error::Format(format!("found {j} data rows, expected {n2}")));
    }
    DistributionField::new(a1, a2, values).map_err(|e| Error::Format(e.to_string()))
}

fn write_header<W: Write>(w: &mut W, axes: &[&Axis]) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&(axes.len() as u32).to_le_bytes())?;
    for a in axes {
        w.write_all(&a.min().to_le_bytes())?;
        w.write_all(&a.max().to_le_bytes())?;
        w.write_all(&(a.len() as u64).to_le_bytes())?;
    }
    Ok(())
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    Ok(f64::from_bits(read_u64(r)?))
}

fn read_header<R: Read>(r: &mut R, rank: u32) -> Result<Vec<Axis>> {
    let mut magic = [0u8; 12];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("not a WIGFIELD container".into()));
    }
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    let found = u32::from_le_bytes(b);
    if found != rank {
        return Err(Error::Format(format!(
            "container has rank {found}, expected {rank}"
        )));
    }
    (0..rank)
        .map(|_| {
            let (min, max, n) = (read_f64(r)?, read_f64(r)?, read_u64(r)?);
            Axis::new(min, max, n as usize).map_err(|e| Error::Format(e.to_string()))
        })
        .collect()
}

fn write_values<W: Write>(w: &mut W, values: &[f64]) -> Result<()> {
    let mut buf = Vec::with_capacity(values.len() * 8);
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn read_values<R: Read>(r: &mut R, n: usize) -> Result<Vec<f64>> {
    let mut buf = vec![0u8; n * 8];
    r.read_exact(&mut buf)?;
    Ok(buf
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect())
}

/// Magic, two axis records `(min f64, max f64, n u64)`, row-major values.
pub fn write_field_binary<W: Write>(field: &DistributionField, mut w: W) -> Result<()> {
    write_header(&mut w, &[field.axis1(), field.axis2()])?;
    write_values(&mut w, field.values())
}

pub fn read_field_binary<R: Read>(mut r: R) -> Result<DistributionField> {
    let axes = read_header(&mut r, 2)?;
    let values = read_values(&mut r, axes[0].len() * axes[1].len())?;
    DistributionField::new(axes[0], axes[1], values).map_err(|e| Error::Format(e.to_string()))
}

/// One-axis variant of the binary container.
pub fn write_series_binary<W: Write>(axis: &Axis, values: &[f64], mut w: W) -> Result<()> {
    if values.len() != axis.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} samples", axis.len()),
            got: format!("{}", values.len()),
        });
    }
    write_header(&mut w, &[axis])?;
    write_values(&mut w, values)
}

pub fn read_series_binary<R: Read>(mut r: R) -> Result<(Axis, Vec<f64>)> {
    let axes = read_header(&mut r, 1)?;
    let values = read_values(&mut r, axes[0].len())?;
    Ok((axes[0], values))
}
