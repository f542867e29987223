//! Three-step recollision model: electrons born at rest at the origin are
//! driven by the laser field and emit `ip + K` on every return.

mod integrate;
mod returns;

pub use integrate::{integrate_trajectory, Segment, Trajectory, TOLERANCE};
pub use returns::{
    emission_events, emission_map, find_returns, EmissionPoint, TrajectoryEvent,
    CONTINUOUS_HORIZON_CYCLES, GRAZING_DISTANCE, ROOT_TOLERANCE,
};
