//! Wigner quasiprobability distributions, their Gaussian smoothing, and the
//! Husimi distribution, in position-momentum space for stationary states and
//! in time-frequency space for high-harmonic emission.
//!
//! * [`phase_space`]: axes, fields, smoothing, moments, contours.
//! * [`stationary`]: square-well and step-potential states, Wigner and Husimi
//!   transforms of sampled wave functions.
//! * [`tdse`]: Crank-Nicolson propagation of a soft-core atom in a laser
//!   pulse, producing the dipole acceleration.
//! * [`classical`]: three-step recollision trajectories and emission maps.
//! * [`time_frequency`]: Wigner-Ville and Husimi transforms of a signal.
//! * [`io`]: CSV, binary and SVG serialization.
//! * [`cli`]: scenario runner behind the `wigsmooth` binary.

pub mod classical;
pub mod cli;
mod error;
pub mod io;
pub mod phase_space;
pub mod stationary;
pub mod tdse;
pub mod time_frequency;

pub use error::{Error, Result};
pub use phase_space::{Axis, AxisId, DistributionField, Regime, SmoothingWidths};
