use std::fmt::Write as _;
use std::io::Write;

use crate::classical::EmissionPoint;
use crate::error::Result;
use crate::phase_space::{Axis, ContourSet};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let u = MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - 2.0 * MARGIN);
        let v = HEIGHT - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - 2.0 * MARGIN);
        (u, v)
    }

    fn open(&self, out: &mut String, x_label: &str, y_label: &str) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(
            out,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{x_label} [{:.4}, {:.4}]</text>"#,
            WIDTH / 2.0,
            HEIGHT - 12.0,
            self.x.0,
            self.x.1
        );
        let _ = writeln!(
            out,
            r#"<text x="12" y="{}" font-size="12" transform="rotate(-90 12 {})" text-anchor="middle">{y_label} [{:.4}, {:.4}]</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            self.y.0,
            self.y.1
        );
    }
}

/// Line-art contour plot; polylines of level `k` carry class `level-k`.
pub fn write_contour_svg<W: Write>(
    set: &ContourSet,
    axis1: &Axis,
    axis2: &Axis,
    labels: (&str, &str),
    mut w: W,
) -> Result<()> {
    let frame = Frame {
        x: (axis1.min(), axis1.max()),
        y: (axis2.min(), axis2.max()),
    };
    let mut out = String::new();
    frame.open(&mut out, labels.0, labels.1);
    let n = set.levels.len().max(1);
    out.push_str("<style>path{fill:none;stroke-width:1}");
    for k in 0..set.levels.len() {
        let shade = (200.0 * (1.0 - k as f64 / n as f64)) as u8;
        let _ = write!(out, ".level-{k}{{stroke:rgb({shade},{shade},{shade})}}");
    }
    out.push_str("</style>\n");
    for (k, (level, lines)) in set.iter().enumerate() {
        for line in lines {
            let mut d = String::new();
            for (m, &(x, y)) in line.points.iter().enumerate() {
                let (u, v) = frame.map(x, y);
                let _ = write!(d, "{}{u:.2},{v:.2}", if m == 0 { "M" } else { " L" });
            }
            if line.closed {
                d.push_str(" Z");
            }
            let _ = writeln!(
                out,
                r#"<path class="level-{k}" data-level="{level}" d="{d}"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    w.write_all(out.as_bytes())?;
    Ok(())
}

/// Scatter plot: first returns as filled dots, later returns as open circles.
pub fn write_emission_svg<W: Write>(
    points: &[EmissionPoint],
    labels: (&str, &str),
    mut w: W,
) -> Result<()> {
    let fold = |f: fn(&EmissionPoint) -> f64| {
        points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(f(p)), hi.max(f(p)))
            })
    };
    let pad = |(lo, hi): (f64, f64)| {
        if lo < hi {
            (lo, hi)
        } else {
            (lo - 1.0, lo + 1.0)
        }
    };
    let (x, y) = if points.is_empty() {
        ((0.0, 1.0), (0.0, 1.0))
    } else {
        (pad(fold(|p| p.t_emit)), pad(fold(|p| p.omega)))
    };
    let frame = Frame { x, y };
    let mut out = String::new();
    frame.open(&mut out, labels.0, labels.1);
    for p in points {
        let (u, v) = frame.map(p.t_emit, p.omega);
        if p.return_index == 1 {
            let _ = writeln!(
                out,
                r#"<circle class="first" cx="{u:.2}" cy="{v:.2}" r="1" fill="black"/>"#
            );
        } else {
            let _ = writeln!(
                out,
                r#"<circle class="later" cx="{u:.2}" cy="{v:.2}" r="2.5" fill="none" stroke="black"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    w.write_all(out.as_bytes())?;
    Ok(())
}
