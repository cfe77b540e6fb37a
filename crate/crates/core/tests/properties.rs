//! Property tests: integral identities against brute-force oracles, and the
//! independence/linearity invariants of the phase.

mod common;

use std::f64::consts::PI;

use abphase::geometry::{polygon_disk_signed_area, polygon_signed_area};
use abphase::scenario::{Timing, WirePath};
use abphase::surface::azimuthal_line_integral;
use abphase::{
    build_paper_scenario, phase_eq1, phase_eq3, winding_number, GeometryParams, RampShape,
    Resolution, ScenarioKind, Strategy as Route, Vec2,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RES: Resolution = Resolution {
    n_time: 256,
    n_curve: 64,
};

fn point(span: f64) -> impl Strategy<Value = Vec2> {
    (-span..span, -span..span).prop_map(|(x, y)| Vec2::new(x, y))
}

/// Star-shaped polygon around `c` with random radii, counterclockwise.
fn star_polygon(c: Vec2, radii: &[f64], phase: f64) -> Vec<Vec2> {
    let n = radii.len();
    radii
        .iter()
        .enumerate()
        .map(|(k, &r)| c + Vec2::from_polar(r, phase + 2.0 * PI * k as f64 / n as f64))
        .collect()
}

fn geometry() -> impl Strategy<Value = GeometryParams> {
    (
        0.5f64..2.0,
        6.0f64..14.0,
        0.02f64..0.1,
        0.9f64..2.0,
        -PI..PI,
        point(5.0),
    )
        .prop_map(|(sol_r, d_ratio, cage_ratio, h_ratio, rotation, axis)| {
            let d = sol_r * d_ratio;
            GeometryParams {
                solenoid_radius: sol_r,
                cage_distance: Some(d),
                cage_radius: Some(d * cage_ratio),
                half_height: Some(d * h_ratio),
                solenoid_offset: Some(2.2 * d),
                rotation,
                axis,
                ..GeometryParams::default()
            }
        })
}

fn flux() -> impl Strategy<Value = f64> {
    -4.0 * PI..4.0 * PI
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Stokes for the azimuthal profile: the loop integral equals the enclosed
    /// fraction of the cross-section, and both match a dense midpoint sum.
    #[test]
    fn loop_integral_is_enclosed_flux_fraction(
        c in point(3.0),
        radii in prop::collection::vec(0.3f64..4.0, 5..12),
        phase in -PI..PI,
        sol_r in 0.3f64..1.5,
    ) {
        let poly = star_polygon(c, &radii, phase);
        let mut closed = poly.clone();
        closed.push(poly[0]);
        let line = azimuthal_line_integral(&closed, Vec2::ZERO, sol_r);
        let frac = polygon_disk_signed_area(&poly, Vec2::ZERO, sol_r) / (PI * sol_r * sol_r);
        prop_assert!((line - frac).abs() < 1e-11, "line {} vs area {}", line, frac);
        let oracle = common::profile_loop_oracle(&poly, Vec2::ZERO, sol_r, 4000);
        prop_assert!((line - oracle).abs() < 2e-4, "line {} vs oracle {}", line, oracle);
    }

    /// Faraday's law for a stationary loop: `∮E·dl = -dΦ_enclosed/dt`, so a
    /// loop fully around the solenoid picks up the whole rate.
    #[test]
    fn loop_around_solenoid_integrates_to_one(
        radii in prop::collection::vec(1.2f64..5.0, 5..12),
        phase in -PI..PI,
        sol_r in 0.2f64..1.0,
    ) {
        let poly = star_polygon(Vec2::ZERO, &radii, phase);
        let mut closed = poly.clone();
        closed.push(poly[0]);
        prop_assert!((azimuthal_line_integral(&closed, Vec2::ZERO, sol_r) - 1.0).abs() < 1e-12);
    }

    /// Disk clipping area against a grid count.
    #[test]
    fn clipped_area_matches_grid(c in point(1.5), radii in prop::collection::vec(0.3f64..2.0, 4..8), phase in -PI..PI) {
        let poly = star_polygon(c, &radii, phase);
        let exact = polygon_disk_signed_area(&poly, Vec2::ZERO, 1.0);
        let n = 300;
        let h = 2.0 / n as f64;
        let mut area = 0.0;
        for i in 0..n {
            for j in 0..n {
                let p = Vec2::new(-1.0 + (i as f64 + 0.5) * h, -1.0 + (j as f64 + 0.5) * h);
                if p.norm_sq() <= 1.0 && common::crossing_number_oracle(&poly, p) != 0 {
                    area += h * h;
                }
            }
        }
        prop_assert!((exact - area).abs() < 0.05, "{} vs {}", exact, area);
        prop_assert!(exact <= polygon_signed_area(&poly) + 1e-12);
    }

    /// Winding agrees with signed ray crossings and is invariant under rigid
    /// motion, scaling and edge subdivision.
    #[test]
    fn winding_matches_crossing_count(
        c in point(3.0),
        radii in prop::collection::vec(0.5f64..4.0, 3..10),
        phase in -PI..PI,
        probe in point(2.0),
        shift in point(10.0),
        angle in -PI..PI,
        scale in 0.1f64..10.0,
    ) {
        let poly = star_polygon(c, &radii, phase);
        let Ok(w) = winding_number(&poly, probe, true) else { return Ok(()); };
        prop_assert!((w - w.round()).abs() < 1e-9);
        prop_assert_eq!(w.round() as i32, common::crossing_number_oracle(&poly, probe));

        let moved: Vec<Vec2> = poly.iter().map(|&p| (p * scale).rotate(angle) + shift).collect();
        let w2 = winding_number(&moved, (probe * scale).rotate(angle) + shift, true).unwrap();
        prop_assert!((w - w2).abs() < 1e-9);

        let mut fine = Vec::new();
        for i in 0..poly.len() {
            let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
            fine.push(a);
            fine.push(a * 0.5 + b * 0.5);
        }
        prop_assert!((winding_number(&fine, probe, true).unwrap() - w).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Total does not depend on which surface is used.
    #[test]
    fn surface_independence(params in geometry(), pi in flux(), pf in flux()) {
        let s = build_paper_scenario(ScenarioKind::Fig1, pi, pf, 0, &params).unwrap();
        let left = phase_eq1(&s, Route::LeftOfSolenoid, RES).unwrap().total;
        let right = phase_eq1(&s, Route::RightOfSolenoid, RES).unwrap().total;
        let straight = phase_eq1(&s, Route::Straight, RES).unwrap().total;
        prop_assert!((left - right).abs() < 1e-9);
        prop_assert!((left - straight).abs() < 1e-9);
        prop_assert!((left - 0.5 * (pi + pf)).abs() < 1e-9);
    }

    /// Surface and potential routes agree on every canonical layout.
    #[test]
    fn cross_method_agreement(params in geometry(), pi in flux(), pf in flux(), kind_idx in 0usize..4, n in 1i32..=5) {
        let kind = ScenarioKind::CANONICAL[kind_idx];
        let s = build_paper_scenario(kind, pi, pf, n, &params).unwrap();
        let strategy = if s.wire.is_some() { Route::ThroughWire } else { Route::LeftOfSolenoid };
        let a = phase_eq1(&s, strategy, RES).unwrap().total;
        let b = phase_eq3(&s).unwrap().total;
        prop_assert!((a - b).abs() < 1e-8, "{kind}: {a} vs {b}");
    }

    /// Only the endpoint fluxes matter, not the ramp profile or timing.
    #[test]
    fn ramp_shape_independence(pi in flux(), pf in flux(), kind_idx in 0usize..4, t0 in 1.05f64..1.4, len in 0.1f64..0.5) {
        let kind = ScenarioKind::CANONICAL[kind_idx];
        let base = GeometryParams::default();
        let shaped = GeometryParams {
            ramp_shape: RampShape::Smoothstep,
            timing: Timing { ramp_start: t0, ramp_end: t0 + len, ..Timing::default() },
            ..GeometryParams::default()
        };
        let a = build_paper_scenario(kind, pi, pf, 2, &base).unwrap();
        let b = build_paper_scenario(kind, pi, pf, 2, &shaped).unwrap();
        prop_assert!((phase_eq3(&a).unwrap().total - phase_eq3(&b).unwrap().total).abs() < 1e-9);
    }

    /// The external-solenoid phase is linear in the number of turns.
    #[test]
    fn linear_in_turns(pi in flux(), pf in flux(), params in geometry()) {
        let unit = phase_eq3(&build_paper_scenario(ScenarioKind::Fig3, pi, pf, 1, &params).unwrap()).unwrap().total;
        for n in [2, 3, -4] {
            let s = build_paper_scenario(ScenarioKind::Fig3, pi, pf, n, &params).unwrap();
            let t = phase_eq3(&s).unwrap().total;
            prop_assert!((t - n as f64 * unit).abs() < 1e-8 * (1.0 + t.abs()));
        }
    }

    /// Any wire with the same winding gives the same phase; the total follows
    /// the winding oracle for arbitrary random wires.
    #[test]
    fn wire_shape_independence(seed in any::<u64>(), pi in flux(), pf in flux(), extra in -2i32..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = build_paper_scenario(ScenarioKind::Fig1, pi, pf, 0, &GeometryParams::default()).unwrap();
        let (axis, r) = (s.solenoid.axis_xy, s.solenoid.radius);
        let poly = common::random_wire(&mut rng, axis, r, s.cages[0].center, s.cages[1].center, extra);
        let turns = winding_number(&poly, axis, false).unwrap();
        s.wire = Some(WirePath { polyline: poly, turns });
        s.kind = ScenarioKind::Custom;
        prop_assert!(abphase::validate(&s).is_empty());
        let expect = common::wire_layout_oracle(pi, pf, turns);
        let pot = phase_eq3(&s).unwrap().total;
        let surf = phase_eq1(&s, Route::ThroughWire, RES).unwrap().total;
        prop_assert!((pot - expect).abs() < 1e-8, "eq3 {pot} vs {expect}");
        prop_assert!((surf - expect).abs() < 1e-8, "eq1 {surf} vs {expect}");
    }

    /// Rigid motions of the whole layout leave every total unchanged.
    #[test]
    fn rigid_motion_invariance(pi in flux(), pf in flux(), rotation in -PI..PI, axis in point(20.0), kind_idx in 0usize..4) {
        let kind = ScenarioKind::CANONICAL[kind_idx];
        let moved = GeometryParams { rotation, axis, ..GeometryParams::default() };
        let a = build_paper_scenario(kind, pi, pf, 3, &GeometryParams::default()).unwrap();
        let b = build_paper_scenario(kind, pi, pf, 3, &moved).unwrap();
        prop_assert!((phase_eq3(&a).unwrap().total - phase_eq3(&b).unwrap().total).abs() < 1e-9);
    }
}
