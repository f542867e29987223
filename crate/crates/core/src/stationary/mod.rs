//! Square-well and step-potential states and the Wigner and Husimi
//! transforms of sampled wave functions.

mod square_well;
mod step;
mod wavefunction;
mod wigner;

pub use square_well::{square_well_wavefunction, SquareWellSpec};
pub use step::{step_wavefunction, tapered_step_wavefunction, StepPotentialSpec};
pub use wavefunction::WavefunctionGrid;
pub(crate) use wigner::{check_frequency_axis, gaussian_projection};
pub use wigner::{
    husimi_direct, momentum_bound, wigner_transform, wigner_transform_with, WignerOutput,
    EDGE_TOLERANCE,
};
