//! Phase from the potentials along each worldline: `q/ħ ∫ (A · dx - V dt)`.
//!
//! This route never builds a surface. The vector-potential part is integrated
//! along the moving legs, where the flux is constant. The scalar part only
//! matters while the wavepackets dwell in their cages during the ramp, where
//! `V` follows from `E = 0` inside conductors: `∇V = -∂A/∂t` along any path
//! that stays in metal. The potential is anchored at `V(center of cage b) = 0`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{layout_is_half_turn_symmetric, FieldError, PhysicalConstants};
use crate::geometry::{lerp, point_segment_distance, Vec2};
use crate::scenario::{
    build_finite_cage_scenario, GeometryParams, Scenario, ScenarioError, ScenarioKind, Worldline,
};
use crate::surface::{
    phase_eq1_with, CageModel, Method, PhaseResult, QuadratureInfo, Resolution, Strategy,
    SurfaceError,
};

const GL_ORDER: usize = 8;
const MIN_PANELS: usize = 4;
/// Panels per unit of (segment length / distance from axis).
const PANEL_DENSITY: f64 = 8.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("interval [{from}, {to}] overlaps the flux ramp; V is unknown outside conductors")]
    OverlapsRamp { from: f64, to: f64 },
    #[error("no conductor path joins the two cages and the layout is not symmetric")]
    PotentialPathUndefined,
}

/// Vector-potential integrals of one worldline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLegs {
    pub inbound: f64,
    pub outbound: f64,
    /// `-q/ħ ∫ V dt` over the dwell.
    pub dwell: f64,
}

/// Contributions to `φ_a - φ_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathPhaseBreakdown {
    pub inbound_vector: f64,
    pub dwell_scalar: f64,
    pub outbound_vector: f64,
    pub path_a: PathLegs,
    pub path_b: PathLegs,
}

impl PathPhaseBreakdown {
    pub fn total(&self) -> f64 {
        self.inbound_vector + self.dwell_scalar + self.outbound_vector
    }
}

fn gauss_legendre() -> GaussLegendre {
    GaussLegendre::new(NonZeroUsize::new(GL_ORDER).expect("order is positive"))
}

fn panel_count(p: Vec2, q: Vec2, axis: Vec2, scale: f64) -> usize {
    let len = p.distance(q);
    let dmin = point_segment_distance(axis, p, q).max(f64::MIN_POSITIVE);
    let n = (PANEL_DENSITY * len / dmin * scale).ceil();
    (n as usize).max(MIN_PANELS)
}

/// `∫ φ̂/(2πρ) · dr` along a polyline by composite Gauss-Legendre.
fn profile_line_integral(
    scenario: &Scenario,
    route: &[Vec2],
    gl: &GaussLegendre,
    scale: f64,
) -> Result<f64, FieldError> {
    let sol = &scenario.solenoid;
    let mut total = 0.0;
    for w in route.windows(2) {
        let (p, q) = (w[0], w[1]);
        if p == q {
            continue;
        }
        let dir = q - p;
        let n = panel_count(p, q, sol.axis_xy, scale);
        let mut err = None;
        for k in 0..n {
            let (u0, u1) = (k as f64 / n as f64, (k + 1) as f64 / n as f64);
            total += gl.integrate(u0, u1, |u| match sol.azimuthal_profile(lerp(p, q, u)) {
                Ok(g) => g.dot(dir),
                Err(e) => {
                    err.get_or_insert(e);
                    0.0
                }
            });
        }
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(total)
}

fn vector_leg_with(
    scenario: &Scenario,
    worldline: &Worldline,
    from: f64,
    to: f64,
    gl: &GaussLegendre,
    scale: f64,
) -> Result<f64, PotentialError> {
    let sol = &scenario.solenoid;
    if from < sol.ramp_end && to > sol.ramp_start && sol.flux_initial != sol.flux_final {
        return Err(PotentialError::OverlapsRamp { from, to });
    }
    if to <= from {
        return Ok(0.0);
    }
    // breakpoints: waypoint times inside (from, to)
    let mut times = vec![from];
    times.extend(
        worldline
            .waypoints
            .iter()
            .map(|w| w.time)
            .filter(|&t| t > from && t < to),
    );
    times.push(to);
    let mut total = 0.0;
    for w in times.windows(2) {
        let (ta, tb) = (w[0], w[1]);
        let (p, q) = (worldline.position(ta)?, worldline.position(tb)?);
        if p == q {
            continue;
        }
        let velocity = (q - p) * (1.0 / (tb - ta));
        let n = panel_count(p, q, sol.axis_xy, scale);
        let mut err = None;
        for k in 0..n {
            let t0 = ta + (tb - ta) * k as f64 / n as f64;
            let t1 = ta + (tb - ta) * (k + 1) as f64 / n as f64;
            total += gl.integrate(t0, t1, |t| {
                let x = lerp(p, q, (t - ta) / (tb - ta));
                match sol.vector_potential(x, t) {
                    Ok(a) => a.dot(velocity),
                    Err(e) => {
                        err.get_or_insert(e);
                        0.0
                    }
                }
            });
        }
        if let Some(e) = err {
            return Err(e.into());
        }
    }
    Ok(scenario.constants.coupling() * total)
}

/// `q/ħ ∫ A · dx` along `worldline` between `from` and `to`. Fails if the
/// interval overlaps the ramp.
pub fn vector_potential_leg(
    scenario: &Scenario,
    worldline: &Worldline,
    from: f64,
    to: f64,
) -> Result<f64, PotentialError> {
    vector_leg_with(scenario, worldline, from, to, &gauss_legendre(), 1.0)
}

/// Conductor routes from the anchor (center of cage b) to each dwell
/// position. `None` marks a free jump between the cage centers.
fn conductor_routes(scenario: &Scenario) -> Result<(Vec<Vec2>, Vec<Vec2>), PotentialError> {
    let [pa, pb] = scenario.dwell_positions()?;
    let [ca, cb] = &scenario.cages;
    let route_b = vec![cb.center, pb];
    let route_a = match &scenario.wire {
        Some(wire) => {
            let mut r: Vec<Vec2> = wire.polyline.iter().rev().copied().collect();
            r.push(pa);
            r
        }
        // symmetric charges: V(center a) = V(center b)
        None if layout_is_half_turn_symmetric(scenario) => vec![ca.center, pa],
        None => return Err(PotentialError::PotentialPathUndefined),
    };
    Ok((route_a, route_b))
}

/// Scalar-potential phases `-q/ħ ∫ V dt` of the two dwelling wavepackets.
fn dwell_with(
    scenario: &Scenario,
    gl: &GaussLegendre,
    scale: f64,
) -> Result<(f64, f64), PotentialError> {
    let sol = &scenario.solenoid;
    if sol.flux_initial == sol.flux_final {
        return Ok((0.0, 0.0));
    }
    let (route_a, route_b) = conductor_routes(scenario)?;
    let ka = profile_line_integral(scenario, &route_a, gl, scale)?;
    let kb = profile_line_integral(scenario, &route_b, gl, scale)?;
    // V(x, t) = -Φ'(t) K(x), so -∫V dt = K ∫Φ' dt
    let n = MIN_PANELS.max((MIN_PANELS as f64 * scale).ceil() as usize);
    let (t0, t1) = (sol.ramp_start, sol.ramp_end);
    let rate: f64 = (0..n)
        .map(|k| {
            let a = t0 + (t1 - t0) * k as f64 / n as f64;
            let b = t0 + (t1 - t0) * (k + 1) as f64 / n as f64;
            gl.integrate(a, b, |t| sol.flux_rate(t))
        })
        .sum();
    let c = scenario.constants.coupling();
    Ok((c * ka * rate, c * kb * rate))
}

/// `φ_a - φ_b` contribution of the scalar potential during the dwell.
pub fn dwell_scalar_phase(scenario: &Scenario) -> Result<f64, PotentialError> {
    let (a, b) = dwell_with(scenario, &gauss_legendre(), 1.0)?;
    Ok(a - b)
}

fn breakdown_with(
    scenario: &Scenario,
    gl: &GaussLegendre,
    scale: f64,
) -> Result<PathPhaseBreakdown, PotentialError> {
    let (d0, d1) = scenario.dwell_window()?;
    let (ts, te) = (scenario.start_time(), scenario.end_time());
    let (dwell_a, dwell_b) = dwell_with(scenario, gl, scale)?;
    let mut legs = [PathLegs {
        inbound: 0.0,
        outbound: 0.0,
        dwell: 0.0,
    }; 2];
    for (i, w) in scenario.worldlines.iter().enumerate() {
        legs[i] = PathLegs {
            inbound: vector_leg_with(scenario, w, ts, d0, gl, scale)?,
            outbound: vector_leg_with(scenario, w, d1, te, gl, scale)?,
            dwell: if i == 0 { dwell_a } else { dwell_b },
        };
    }
    let [a, b] = legs;
    Ok(PathPhaseBreakdown {
        inbound_vector: a.inbound - b.inbound,
        dwell_scalar: a.dwell - b.dwell,
        outbound_vector: a.outbound - b.outbound,
        path_a: a,
        path_b: b,
    })
}

/// Phase difference from the potentials alone.
///
/// `magnetic_term` holds the vector-potential legs and `electric_term` the
/// negated dwell term, so `total = magnetic - electric` as for the surface
/// route. The error estimate compares against half the panel count.
pub fn phase_eq3(scenario: &Scenario) -> Result<PhaseResult, PotentialError> {
    let gl = gauss_legendre();
    let fine = breakdown_with(scenario, &gl, 1.0)?;
    let coarse = breakdown_with(scenario, &gl, 0.5)?;
    let total = fine.total();
    Ok(PhaseResult {
        magnetic_term: fine.inbound_vector + fine.outbound_vector,
        electric_term: -fine.dwell_scalar,
        total,
        method: Method::PotentialEq3,
        strategy: None,
        quadrature: QuadratureInfo {
            n_time: 0,
            n_curve: 0,
            error_estimate: (total - coarse.total()).abs(),
        },
        breakdown: Some(fine),
    })
}

/// Idealized phase for the canonical layouts; `None` for custom ones.
pub fn closed_form_phase(
    kind: ScenarioKind,
    flux_initial: f64,
    flux_final: f64,
    turns: f64,
    constants: &PhysicalConstants,
) -> Option<f64> {
    let c = constants.coupling();
    match kind {
        ScenarioKind::Fig1 => Some(c * 0.5 * (flux_initial + flux_final)),
        ScenarioKind::Fig2a => Some(c * flux_initial),
        ScenarioKind::Fig2c => Some(c * flux_final),
        ScenarioKind::Fig3 => Some(turns * c * (flux_initial - flux_final)),
        ScenarioKind::Custom => None,
    }
}

/// Result of the finite-cage comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteCageReport {
    pub cage_radius: f64,
    /// Angle subtended by a cage as seen from the solenoid axis.
    pub delta_theta: f64,
    pub delta_theta_over_pi: f64,
    /// Phase with each cage treated as one equipotential.
    pub phase: f64,
    pub closed_form: f64,
    pub deviation: f64,
    /// Magnitude of the point-cage electric contribution, `|Φf - Φi| / 2`.
    pub electric_scale: f64,
    /// `|deviation| / electric_scale`.
    pub ratio: f64,
    /// Phase with ideal conducting cages; independent of the cage radius.
    pub exact_phase: f64,
}

/// Cage radius that subtends `delta_theta` at distance `cage_distance`.
pub fn cage_radius_for_angle(cage_distance: f64, delta_theta: f64) -> f64 {
    cage_distance * (0.5 * delta_theta).sin()
}

/// Deviation from the point-cage result when the wavepackets wait at the
/// edge of cages of radius `cage_radius`.
///
/// With cages modelled as equipotentials the induced field is integrated
/// from one wavepacket to the other, and the deviation is
/// `(Φf - Φi) Δθ / 2π`. Ideal conductors screen the difference exactly, which
/// `exact_phase` reports.
pub fn finite_cage_deviation(
    flux_initial: f64,
    flux_final: f64,
    cage_radius: f64,
    params: &GeometryParams,
    resolution: Resolution,
) -> Result<FiniteCageReport, PotentialError> {
    let params = GeometryParams {
        cage_radius: Some(cage_radius),
        ..params.clone()
    };
    let scenario = build_finite_cage_scenario(flux_initial, flux_final, &params)?;
    let strategy = Strategy::LeftOfSolenoid;
    let approx = phase_eq1_with(&scenario, strategy, resolution, CageModel::Equipotential)?;
    let exact = phase_eq1_with(&scenario, strategy, resolution, CageModel::Conducting)?;
    let c = scenario.constants.coupling();
    let closed = c * 0.5 * (flux_initial + flux_final);
    let delta_theta = scenario.cages[0].angular_extent(scenario.solenoid.axis_xy);
    let deviation = approx.total - closed;
    let electric_scale = c * 0.5 * (flux_final - flux_initial).abs();
    let ratio = if electric_scale > 0.0 {
        deviation.abs() / electric_scale
    } else {
        0.0
    };
    Ok(FiniteCageReport {
        cage_radius,
        delta_theta,
        delta_theta_over_pi: delta_theta / PI,
        phase: approx.total,
        closed_form: closed,
        deviation,
        electric_scale,
        ratio,
        exact_phase: exact.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::build_paper_scenario;

    const TOL: f64 = 1e-9;

    fn scen(kind: ScenarioKind, pi: f64, pf: f64, n: i32) -> Scenario {
        build_paper_scenario(kind, pi, pf, n, &GeometryParams::default()).unwrap()
    }

    #[test]
    fn fig2a_ledger() {
        let (pi, pf) = (2.0, 5.0);
        let r = phase_eq3(&scen(ScenarioKind::Fig2a, pi, pf, 0)).unwrap();
        let b = r.breakdown.unwrap();
        assert!((b.inbound_vector - pi / 2.0).abs() < TOL, "{b:?}");
        assert!((b.dwell_scalar - (pi - pf) / 2.0).abs() < TOL);
        assert!((b.outbound_vector - pf / 2.0).abs() < TOL);
        assert!((r.total - pi).abs() < TOL);
    }

    #[test]
    fn fig1_has_no_dwell_term() {
        let r = phase_eq3(&scen(ScenarioKind::Fig1, 1.0, 3.0, 0)).unwrap();
        assert!(r.breakdown.unwrap().dwell_scalar.abs() < TOL);
        assert!((r.total - 2.0).abs() < TOL);
    }

    #[test]
    fn fig3_turns() {
        for n in [1, 3, -2] {
            let r = phase_eq3(&scen(ScenarioKind::Fig3, 1.0, 0.25, n)).unwrap();
            assert!(
                (r.total - n as f64 * 0.75).abs() < 1e-8,
                "N={n}: {}",
                r.total
            );
        }
    }

    #[test]
    fn leg_over_ramp_rejected() {
        let s = scen(ScenarioKind::Fig1, 0.0, 1.0, 0);
        assert!(matches!(
            vector_potential_leg(&s, &s.worldlines[0], 0.0, 1.5),
            Err(PotentialError::OverlapsRamp { .. })
        ));
    }

    #[test]
    fn asymmetric_without_wire_is_undefined() {
        let mut s = scen(ScenarioKind::Fig1, 0.0, 1.0, 0);
        let moved = Vec2::new(-8.0, 6.0);
        s.cages[1].center = moved;
        for wp in &mut s.worldlines[1].waypoints[1..3] {
            wp.position = moved;
        }
        assert_eq!(
            dwell_scalar_phase(&s),
            Err(PotentialError::PotentialPathUndefined)
        );
    }

    #[test]
    fn closed_forms() {
        let c = PhysicalConstants::default();
        assert_eq!(
            closed_form_phase(ScenarioKind::Fig1, 1.0, 3.0, 0.0, &c),
            Some(2.0)
        );
        assert_eq!(
            closed_form_phase(ScenarioKind::Fig3, 1.0, 3.0, 2.0, &c),
            Some(-4.0)
        );
        assert_eq!(
            closed_form_phase(ScenarioKind::Custom, 1.0, 3.0, 2.0, &c),
            None
        );
    }

    #[test]
    fn finite_cage_ratio_matches_subtended_angle() {
        let p = GeometryParams::default();
        let r = cage_radius_for_angle(p.cage_distance(), 0.1 * PI);
        let rep = finite_cage_deviation(0.0, 2.0 * PI, r, &p, Resolution::new(256, 64)).unwrap();
        assert!((rep.delta_theta - 0.1 * PI).abs() < 1e-12);
        assert!((rep.ratio - 0.1).abs() < 1e-9, "{rep:?}");
        assert!((rep.exact_phase - PI).abs() < 1e-9);
    }
}
