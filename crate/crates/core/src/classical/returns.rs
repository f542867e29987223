use rayon::prelude::*;
use serde::Serialize;

use super::integrate::{integrate_trajectory, Trajectory};
use crate::phase_space::Axis;
use crate::tdse::PulseSpec;

/// Time resolution of located returns.
pub const ROOT_TOLERANCE: f64 = 1e-8;
/// Minima of `|x|` below this count as returns without a sign change.
pub const GRAZING_DISTANCE: f64 = 1e-10;
// Returns are only sought once the electron has left the origin this far.
const DEPARTURE_DISTANCE: f64 = 1e-6;
const SUBSAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryEvent {
    pub birth_time: f64,
    pub return_time: f64,
    pub return_kinetic_energy: f64,
    pub return_index: usize,
}

/// Emission from one recollision: `omega = ip + K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmissionPoint {
    pub t_emit: f64,
    pub omega: f64,
    pub return_index: usize,
}

impl EmissionPoint {
    /// Time in optical cycles and frequency in harmonic orders.
    pub fn scaled(&self, omega_l: f64) -> EmissionPoint {
        EmissionPoint {
            t_emit: self.t_emit * omega_l / std::f64::consts::TAU,
            omega: self.omega / omega_l,
            return_index: self.return_index,
        }
    }
}

fn bisect(traj: &Trajectory, mut a: f64, mut b: f64) -> f64 {
    let x = |t: f64| traj.state(t).map_or(0.0, |s| s.0);
    let mut fa = x(a);
    while b - a > ROOT_TOLERANCE {
        let m = 0.5 * (a + b);
        let fm = x(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Zero crossings of `x(t)` after the departure from the origin, in time order.
pub fn find_returns(traj: &Trajectory, max_returns: usize) -> Vec<TrajectoryEvent> {
    let mut events = Vec::new();
    if max_returns == 0 {
        return events;
    }
    let mut departed = false;
    let mut prev: Option<(f64, f64)> = None;
    let mut prev2: Option<(f64, f64)> = None;
    let push = |events: &mut Vec<TrajectoryEvent>, t: f64| {
        let (_, v) = traj.state(t).unwrap_or((0.0, 0.0));
        events.push(TrajectoryEvent {
            birth_time: traj.birth_time,
            return_time: t,
            return_kinetic_energy: 0.5 * v * v,
            return_index: events.len() + 1,
        });
    };
    'outer: for seg in &traj.segments {
        for k in 1..=SUBSAMPLES {
            let t = seg.t0 + (seg.t1 - seg.t0) * k as f64 / SUBSAMPLES as f64;
            let (x, _) = seg.eval(t);
            if !departed {
                if x.abs() > DEPARTURE_DISTANCE {
                    departed = true;
                    prev = Some((t, x));
                }
                continue;
            }
            let (tp, xp) = prev.expect("set on departure");
            if (x < 0.0) != (xp < 0.0) || x == 0.0 {
                push(&mut events, bisect(traj, tp, t));
            } else if let Some((_, xpp)) = prev2 {
                if xp.abs() < GRAZING_DISTANCE && xp.abs() <= xpp.abs() && xp.abs() <= x.abs() {
                    push(&mut events, tp);
                }
            }
            if events.len() >= max_returns {
                break 'outer;
            }
            prev2 = prev;
            prev = Some((t, x));
        }
    }
    events
}

/// Default integration horizon for pulses without a finite support.
pub const CONTINUOUS_HORIZON_CYCLES: f64 = 4.0;

/// Every return of every trajectory born on `birth_grid`, in birth order.
pub fn emission_map(
    pulse: &PulseSpec,
    ip: f64,
    birth_grid: &Axis,
    max_returns: usize,
) -> Vec<EmissionPoint> {
    emission_events(pulse, birth_grid, max_returns)
        .into_iter()
        .map(|e| EmissionPoint {
            t_emit: e.return_time,
            omega: ip + e.return_kinetic_energy,
            return_index: e.return_index,
        })
        .collect()
}

pub fn emission_events(
    pulse: &PulseSpec,
    birth_grid: &Axis,
    max_returns: usize,
) -> Vec<TrajectoryEvent> {
    let births: Vec<f64> = birth_grid.values().collect();
    births
        .par_iter()
        .map(|&tb| {
            let t_max = match pulse.support() {
                Some((_, end)) => end,
                None => tb + CONTINUOUS_HORIZON_CYCLES * pulse.period(),
            };
            if tb >= t_max {
                return Vec::new();
            }
            find_returns(&integrate_trajectory(tb, pulse, t_max), max_returns)
        })
        .flatten()
        .collect()
}
