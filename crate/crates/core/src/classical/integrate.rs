//! Field-driven free flight `x'' = -E(t)` from rest at the origin.

use crate::tdse::PulseSpec;

/// Local error tolerance of the adaptive integrator.
pub const TOLERANCE: f64 = 1e-8;

// Dormand-Prince 5(4) tableau. The force depends on time only, so the
// stages need just the nodes and weights.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One accepted step; `(x, v, a)` at both ends for quintic Hermite output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub t0: f64,
    pub t1: f64,
    pub start: [f64; 3],
    pub end: [f64; 3],
}

impl Segment {
    /// Position and velocity at `t` inside the segment.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let [x0, v0, a0] = self.start;
        let [x1, v1, a1] = self.end;
        let (s2, s3) = (s * s, s * s * s);
        let (s4, s5) = (s3 * s, s3 * s2);
        let h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
        let h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
        let h20 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
        let h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
        let h11 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
        let h21 = 0.5 * (s3 - 2.0 * s4 + s5);
        let x =
            h00 * x0 + h * h10 * v0 + h * h * h20 * a0 + h01 * x1 + h * h11 * v1 + h * h * h21 * a1;
        let d00 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
        let d10 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
        let d20 = 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4);
        let d11 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
        let d21 = 0.5 * (3.0 * s2 - 8.0 * s3 + 5.0 * s4);
        let v = (d00 * x0 - d00 * x1) / h + d10 * v0 + h * d20 * a0 + d11 * v1 + h * d21 * a1;
        (x, v)
    }
}

/// Dense solution of one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub birth_time: f64,
    pub segments: Vec<Segment>,
}

impl Trajectory {
    pub fn end_time(&self) -> f64 {
        self.segments.last().map_or(self.birth_time, |s| s.t1)
    }

    fn segment_at(&self, t: f64) -> Option<&Segment> {
        if self.segments.is_empty() || t < self.birth_time || t > self.end_time() {
            return None;
        }
        let k = self.segments.partition_point(|s| s.t1 < t);
        self.segments.get(k.min(self.segments.len() - 1))
    }

    /// `(x, v)` at `t`, or `None` outside the integrated window.
    pub fn state(&self, t: f64) -> Option<(f64, f64)> {
        if t == self.birth_time {
            return Some((0.0, 0.0));
        }
        self.segment_at(t).map(|s| s.eval(t))
    }
}

/// Integrates from `x = v = 0` at `birth_time` to `t_max` with Dormand-Prince
/// steps no longer than a twentieth of an optical cycle.
pub fn integrate_trajectory(birth_time: f64, pulse: &PulseSpec, t_max: f64) -> Trajectory {
    let force = |t: f64| -pulse.field(t);
    let h_max = pulse.period() / 20.0;
    let mut segments = Vec::new();
    let (mut t, mut x, mut v) = (birth_time, 0.0, 0.0);
    let mut h = h_max / 16.0;
    while t < t_max {
        h = h.min(t_max - t);
        let mut k = [0.0; 7];
        for (i, ki) in k.iter_mut().enumerate() {
            *ki = force(t + C[i] * h);
        }
        // velocity stages are v + h * sum A k; position uses those velocities
        let mut vs = [0.0; 7];
        for i in 0..7 {
            vs[i] = v + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
        }
        let dv5: f64 = (0..7).map(|i| B5[i] * k[i]).sum();
        let dv4: f64 = (0..7).map(|i| B4[i] * k[i]).sum();
        let dx5: f64 = (0..7).map(|i| B5[i] * vs[i]).sum();
        let dx4: f64 = (0..7).map(|i| B4[i] * vs[i]).sum();
        let (x_new, v_new) = (x + h * dx5, v + h * dv5);
        let err_x = h * (dx5 - dx4).abs() / (TOLERANCE * (1.0 + x_new.abs()));
        let err_v = h * (dv5 - dv4).abs() / (TOLERANCE * (1.0 + v_new.abs()));
        let err = err_x.max(err_v);
        if err <= 1.0 {
            segments.push(Segment {
                t0: t,
                t1: t + h,
                start: [x, v, force(t)],
                end: [x_new, v_new, force(t + h)],
            });
            t += h;
            x = x_new;
            v = v_new;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).min(h_max);
    }
    Trajectory {
        birth_time,
        segments,
    }
}
