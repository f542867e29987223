//! Crank-Nicolson propagation of a one-dimensional atom in a laser pulse and
//! the resulting dipole acceleration.

mod ground;
mod potential;
mod propagate;
mod pulse;
mod spectrum;
mod tridiag;
pub mod units;

pub use ground::{ground_state, hamiltonian_tridiagonal};
pub use potential::{FreeSpace, Potential, SoftCoreSpec};
pub use propagate::{
    propagate, DipoleRecord, PropagationConfig, Propagator, RecordMetadata, NORM_GROWTH_LIMIT,
};
pub use pulse::{Envelope, PulseSpec};
pub use spectrum::PowerSpectrum;
pub use tridiag::solve_tridiagonal;
