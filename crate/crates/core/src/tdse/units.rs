//! Conversions from laboratory units to atomic units.

use crate::error::{Error, Result};

/// Photon energy in hartree times vacuum wavelength in nm.
pub const HARTREE_NM: f64 = 45.5633;
/// Intensity in W/cm^2 of a unit atomic field amplitude.
pub const ATOMIC_INTENSITY: f64 = 3.50945e16;
/// Atomic unit of time in femtoseconds.
pub const ATOMIC_TIME_FS: f64 = 0.0241888;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

/// Carrier angular frequency for a vacuum wavelength in nm.
pub fn wavelength_to_omega(wavelength_nm: f64) -> Result<f64> {
    Ok(HARTREE_NM / positive("wavelength", wavelength_nm)?)
}

/// Peak field amplitude for a peak intensity in W/cm^2.
pub fn intensity_to_field(intensity_w_cm2: f64) -> Result<f64> {
    Ok((positive("intensity", intensity_w_cm2)? / ATOMIC_INTENSITY).sqrt())
}

pub fn femtoseconds_to_au(t_fs: f64) -> Result<f64> {
    Ok(positive("duration", t_fs)? / ATOMIC_TIME_FS)
}

/// `U_p = E0^2 / 4 omega^2`.
pub fn ponderomotive_energy(e0: f64, omega: f64) -> f64 {
    e0 * e0 / (4.0 * omega * omega)
}
