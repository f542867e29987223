use std::io::Write;

use crate::error::Result;
use crate::phase_space::ContourSet;

/// One vertex per line: `level_index,level,polyline,closed,x1,x2`.
pub fn write_contour_csv<W: Write>(set: &ContourSet, mut w: W) -> Result<()> {
    writeln!(w, "level_index,level,polyline,closed,x1,x2")?;
    for (k, (level, lines)) in set.iter().enumerate() {
        for (m, line) in lines.iter().enumerate() {
            for &(x, y) in &line.points {
                writeln!(w, "{k},{level},{m},{},{x},{y}", line.closed as u8)?;
            }
        }
    }
    Ok(())
}
