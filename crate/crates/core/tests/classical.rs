mod common;

use std::f64::consts::TAU;

use proptest::prelude::*;
use wigsmooth::classical::{emission_events, emission_map, find_returns, integrate_trajectory};
use wigsmooth::phase_space::Axis;
use wigsmooth::tdse::PulseSpec;

use common::{first_return, free_flight};

const E0: f64 = 0.0534;
const W: f64 = 0.057;

fn up() -> f64 {
    E0 * E0 / (4.0 * W * W)
}

#[test]
fn integrator_tracks_closed_form() {
    let pulse = PulseSpec::continuous(E0, W).unwrap();
    let period = TAU / W;
    for frac in [0.01, 0.07, 0.2, 0.33, 0.61, 0.9] {
        let tb = frac * period;
        let traj = integrate_trajectory(tb, &pulse, tb + 2.0 * period);
        let scale = E0 / (W * W);
        for k in 1..=400 {
            let t = tb + 2.0 * period * k as f64 / 400.0;
            let (x, v) = traj.state(t).unwrap();
            let (xr, vr) = free_flight(E0, W, tb, t);
            assert!((x - xr).abs() < 1e-6 * scale, "x at {t}: {x} vs {xr}");
            assert!((v - vr).abs() < 1e-6 * E0 / W, "v at {t}: {v} vs {vr}");
        }
    }
}

#[test]
fn events_repeat_every_half_cycle() {
    let pulse = PulseSpec::continuous(E0, W).unwrap();
    let period = TAU / W;
    let births = Axis::new(0.0, 0.5 * period, 101).unwrap();
    let shifted = Axis::new(0.5 * period, period, 101).unwrap();
    let a = emission_events(&pulse, &births, 3);
    let b = emission_events(&pulse, &shifted, 3);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.return_index, y.return_index);
        let delay = (x.return_time - x.birth_time) - (y.return_time - y.birth_time);
        assert!(delay.abs() < 1e-6 * period, "delay {delay}");
        assert!((x.return_kinetic_energy - y.return_kinetic_energy).abs() < 1e-6 * up());
    }
}

#[test]
fn later_returns_stay_below_the_first_return_maximum() {
    let pulse = PulseSpec::continuous(E0, W).unwrap();
    let period = TAU / W;
    let births = Axis::new(0.0, 0.5 * period, 2001).unwrap();
    let events = emission_events(&pulse, &births, 4);
    let first = events
        .iter()
        .filter(|e| e.return_index == 1)
        .fold(0.0f64, |m, e| m.max(e.return_kinetic_energy));
    assert!(
        (first / up() - 3.17).abs() < 0.01,
        "first-return max {}",
        first / up()
    );
    let later = events
        .iter()
        .filter(|e| e.return_index > 1)
        .fold(0.0f64, |m, e| m.max(e.return_kinetic_energy));
    assert!(later > 0.0 && later < first, "later max {}", later / up());
}

#[test]
fn trajectories_born_after_the_crest_never_return() {
    let pulse = PulseSpec::continuous(E0, W).unwrap();
    let period = TAU / W;
    for frac in [0.26, 0.3, 0.4, 0.49] {
        let tb = frac * period;
        let traj = integrate_trajectory(tb, &pulse, tb + 4.0 * period);
        assert!(
            find_returns(&traj, 1).is_empty(),
            "birth phase {frac} returned"
        );
        assert!(first_return(E0, W, tb, 4.0 * period).is_none());
    }
}

#[test]
fn emission_points_lie_inside_a_finite_pulse() {
    let pulse = PulseSpec::flat_top(E0, W, 6.0, 1.0).unwrap();
    let (start, end) = pulse.support().unwrap();
    let period = TAU / W;
    let births = Axis::new(start, end, 601).unwrap();
    let events = emission_events(&pulse, &births, 2);
    assert!(!events.is_empty());
    let flat = (start + period, end - period);
    let mut inside = 0;
    for e in &events {
        assert!(e.return_time > e.birth_time && e.return_time <= end + 1e-9);
        if e.birth_time >= flat.0 && e.return_time <= flat.1 {
            inside += 1;
            assert!(e.return_kinetic_energy < 3.1732 * up(), "{e:?}");
        }
    }
    assert!(inside > 0);
    let ip = 0.79;
    let points = emission_map(&pulse, ip, &births, 2);
    assert_eq!(points.len(), events.len());
    assert!(points
        .iter()
        .zip(&events)
        .all(|(p, e)| p.omega == ip + e.return_kinetic_energy));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn first_return_matches_scan(frac in 0.005f64..0.245, e0 in 0.02f64..0.1, w in 0.04f64..0.08) {
        let pulse = PulseSpec::continuous(e0, w).unwrap();
        let period = TAU / w;
        let tb = frac * period;
        let traj = integrate_trajectory(tb, &pulse, tb + 4.0 * period);
        let got = find_returns(&traj, 1);
        let want = first_return(e0, w, tb, 4.0 * period);
        match (got.first(), want) {
            (Some(g), Some((tr, k))) => {
                let u = e0 * e0 / (4.0 * w * w);
                prop_assert!((g.return_time - tr).abs() < 1e-6 * period, "time {} vs {}", g.return_time, tr);
                prop_assert!((g.return_kinetic_energy - k).abs() < 1e-5 * u, "energy {} vs {}", g.return_kinetic_energy, k);
            }
            (g, r) => prop_assert!(false, "mismatch {:?} vs {:?}", g, r),
        }
    }
}
