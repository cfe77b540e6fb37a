//! Test-side oracles and scenario generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use abphase::scenario::{validate, GeometryParams, Timing, WirePath};
use abphase::{build_paper_scenario, RampShape, Scenario, ScenarioKind, Vec2};
use rand::Rng;

/// Closed-loop integral of the continued azimuthal profile by dense midpoint
/// sampling. Inside the disk the profile is `ρ φ̂ / (2π R²)`.
pub fn profile_loop_oracle(poly: &[Vec2], axis: Vec2, radius: f64, per_edge: usize) -> f64 {
    let n = poly.len();
    let mut total = 0.0;
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let step = (q - p) * (1.0 / per_edge as f64);
        for k in 0..per_edge {
            let m = p + step * (k as f64 + 0.5) - axis;
            let rho2 = m.x * m.x + m.y * m.y;
            let scale = if rho2 < radius * radius {
                1.0 / (2.0 * PI * radius * radius)
            } else {
                1.0 / (2.0 * PI * rho2)
            };
            total += (-m.y * step.x + m.x * step.y) * scale;
        }
    }
    total
}

/// Signed crossing count of a closed polygon across the ray from `c` along +x.
pub fn crossing_number_oracle(poly: &[Vec2], c: Vec2) -> i32 {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        if p.y <= c.y && q.y > c.y {
            let x = p.x + (c.y - p.y) * (q.x - p.x) / (q.y - p.y);
            if x > c.x {
                w += 1;
            }
        } else if p.y > c.y && q.y <= c.y {
            let x = p.x + (c.y - p.y) * (q.x - p.x) / (q.y - p.y);
            if x > c.x {
                w -= 1;
            }
        }
    }
    w
}

/// Total predicted for a wire of open winding `w` joining the centers of the
/// symmetric two-cage layout: legs give the mean flux, the dwell gives
/// `w (Φi - Φf)`.
pub fn wire_layout_oracle(phi_i: f64, phi_f: f64, w: f64) -> f64 {
    0.5 * (phi_i + phi_f) + w * (phi_i - phi_f)
}

fn random_params<R: Rng>(rng: &mut R) -> GeometryParams {
    let sol_r = rng.random_range(0.5..2.0);
    let d = sol_r * rng.random_range(6.0..16.0);
    let shift = rng.random_range(-0.1..0.1);
    GeometryParams {
        solenoid_radius: sol_r,
        cage_distance: Some(d),
        cage_radius: Some(d * rng.random_range(0.02..0.12)),
        half_height: Some(d * rng.random_range(0.9..2.0)),
        solenoid_offset: Some(d * rng.random_range(1.8..3.0)),
        rotation: rng.random_range(-PI..PI),
        axis: Vec2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
        ramp_shape: if rng.random_bool(0.5) {
            RampShape::Linear
        } else {
            RampShape::Smoothstep
        },
        timing: Timing {
            start: 0.0,
            arrive: 1.0 + shift,
            ramp_start: 1.2 + shift,
            ramp_end: rng.random_range(1.5..1.9),
            leave: 2.0,
            end: rng.random_range(2.8..3.5),
        },
    }
}

/// Polyline from `a` to `b` around `axis` whose open winding is the angle
/// from `a` to `b` plus `extra` full turns, kept well outside the solenoid.
pub fn random_wire<R: Rng>(
    rng: &mut R,
    axis: Vec2,
    sol_r: f64,
    a: Vec2,
    b: Vec2,
    extra: i32,
) -> Vec<Vec2> {
    let (ra, rb) = ((a - axis).norm(), (b - axis).norm());
    let (ta, tb) = ((a - axis).angle(), (b - axis).angle());
    let mut sweep = (tb - ta).rem_euclid(2.0 * PI);
    if rng.random_bool(0.5) {
        sweep -= 2.0 * PI;
    }
    sweep += 2.0 * PI * extra as f64;
    let steps = ((sweep.abs() / (PI / 6.0)).ceil() as usize).max(3);
    let r_min = 1.6 * sol_r;
    let r_max = 0.9 * ra.min(rb);
    let mut poly = vec![a];
    for k in 1..steps {
        let u = k as f64 / steps as f64;
        let r = if r_max > r_min {
            rng.random_range(r_min..r_max)
        } else {
            r_min
        };
        poly.push(axis + Vec2::from_polar(r, ta + sweep * u));
    }
    poly.push(b);
    poly
}

/// A random scenario that passes validation, together with a short label.
pub fn random_admissible<R: Rng>(rng: &mut R) -> (Scenario, String) {
    loop {
        let kind = ScenarioKind::CANONICAL[rng.random_range(0..4)];
        let params = random_params(rng);
        let turns = {
            let n = rng.random_range(1..=5);
            if rng.random_bool(0.5) {
                n
            } else {
                -n
            }
        };
        let phi_i = rng.random_range(-4.0 * PI..4.0 * PI);
        let phi_f = rng.random_range(-4.0 * PI..4.0 * PI);
        let Ok(mut s) = build_paper_scenario(kind, phi_i, phi_f, turns, &params) else {
            continue;
        };
        let mut label = kind.as_str().to_string();

        // half of the wireless layouts get a random wire instead
        if kind == ScenarioKind::Fig1 && rng.random_bool(0.5) {
            let extra = rng.random_range(-2..=2);
            let poly = random_wire(
                rng,
                s.solenoid.axis_xy,
                s.solenoid.radius,
                s.cages[0].center,
                s.cages[1].center,
                extra,
            );
            let turns = abphase::winding_number(&poly, s.solenoid.axis_xy, false).unwrap();
            s.wire = Some(WirePath {
                polyline: poly,
                turns,
            });
            s.kind = ScenarioKind::Custom;
            label = format!("random_wire(turns={turns:.2})");
        }
        // move the dwell points off center
        if rng.random_bool(0.6) {
            for (w, cage) in s.worldlines.iter_mut().zip(s.cages.iter()) {
                let r = cage.radius * rng.random_range(0.0..0.95);
                let p = cage.center + Vec2::from_polar(r, rng.random_range(-PI..PI));
                w.waypoints[1].position = p;
                w.waypoints[2].position = p;
            }
            label.push_str("+offcenter");
        }
        if validate(&s).is_empty() {
            return (s, label);
        }
    }
}
