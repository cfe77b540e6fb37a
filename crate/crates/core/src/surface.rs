//! Spacetime surfaces spanning the two worldlines, and the phase computed as
//! magnetic flux through the surface minus the time-integrated electric line
//! integral across it.
//!
//! A surface is a one-parameter family of connecting curves `γ(t, s)` running
//! from `x_a(t)` (s = 0) to `x_b(t)` (s = 1). While both wavepackets dwell in
//! their cages the curve is a fixed template chosen by the [`Strategy`].
//! Before and after the dwell the template's deviation from the chord is
//! blended linearly into the chord between the moving endpoints, so the curve
//! collapses to a point at both beam splitters and the surface boundary is
//! exactly the pair of worldlines.
//!
//! Orientation: the area element is `∂ₜγ × ∂ₛγ dt ds`, which makes the
//! boundary run forward along path a and backward along path b.

use std::f64::consts::PI;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{
    curve_inside_conductors, ev_line_integral_vanishes, layout_is_half_turn_symmetric,
};
use crate::geometry::{
    bbox_misses_disk, lerp, polygon_disk_signed_area, segment_circle_params, subtended_angle, Vec2,
};
use crate::potential::PathPhaseBreakdown;
use crate::scenario::{Scenario, ScenarioError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("the through_wire strategy needs a wire")]
    NoWire,
    #[error("resolution must have at least 2 time cells and 2 curve segments")]
    Resolution,
    #[error("E_V unmodeled on the connecting curve at t = {time}")]
    EvUnmodeled { time: f64 },
}

/// How the connecting curve is routed while the wavepackets dwell in their cages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Detour with the solenoid on the left of the a→b direction, i.e.
    /// counterclockwise about the axis.
    LeftOfSolenoid,
    /// Clockwise detour about the axis.
    RightOfSolenoid,
    /// Along the wire, through conductors only.
    ThroughWire,
    /// The chord between the two dwell positions.
    Straight,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::LeftOfSolenoid,
        Strategy::RightOfSolenoid,
        Strategy::ThroughWire,
        Strategy::Straight,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::LeftOfSolenoid => "left",
            Strategy::RightOfSolenoid => "right",
            Strategy::ThroughWire => "through_wire",
            Strategy::Straight => "straight",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub n_time: usize,
    pub n_curve: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            n_time: 2048,
            n_curve: 512,
        }
    }
}

impl Resolution {
    pub fn new(n_time: usize, n_curve: usize) -> Self {
        Self { n_time, n_curve }
    }

    pub fn halved(self) -> Self {
        Self::new((self.n_time / 2).max(2), (self.n_curve / 2).max(2))
    }
}

/// Treatment of the cages when replacing the total field by `E_A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CageModel {
    /// Cages are ideal conductors: each slice is extended inside the cages to
    /// their centers, where the symmetry argument applies.
    #[default]
    Conducting,
    /// Each cage is a single potential, so `E_A` is integrated directly
    /// between the wavepacket positions. Exact for point cages only.
    Equipotential,
}

/// Template of connecting curves plus the blending schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectingCurveFamily {
    pub strategy: Strategy,
    /// Curve parameter of every sample, 0 at path a, 1 at path b.
    pub params: Vec<f64>,
    /// Dwell-time curve.
    pub template: Vec<Vec2>,
    /// `template - chord` at each parameter.
    deviation: Vec<Vec2>,
    pub dwell: (f64, f64),
    pub span: (f64, f64),
}

impl ConnectingCurveFamily {
    pub fn new(
        scenario: &Scenario,
        strategy: Strategy,
        n_curve: usize,
    ) -> Result<Self, SurfaceError> {
        if n_curve < 2 {
            return Err(SurfaceError::Resolution);
        }
        let dwell = scenario.dwell_window()?;
        let [pa, pb] = scenario.dwell_positions()?;
        let axis = scenario.solenoid.axis_xy;

        let (params, template) = match strategy {
            Strategy::Straight => {
                let params = uniform_params(n_curve);
                let template = params.iter().map(|&s| lerp(pa, pb, s)).collect();
                (params, template)
            }
            Strategy::LeftOfSolenoid | Strategy::RightOfSolenoid => {
                let (ra, rb) = ((pa - axis).norm(), (pb - axis).norm());
                let (tha, thb) = ((pa - axis).angle(), (pb - axis).angle());
                let sweep = if strategy == Strategy::LeftOfSolenoid {
                    let s = (thb - tha).rem_euclid(2.0 * PI);
                    if s == 0.0 {
                        2.0 * PI
                    } else {
                        s
                    }
                } else {
                    let s = (tha - thb).rem_euclid(2.0 * PI);
                    -(if s == 0.0 { 2.0 * PI } else { s })
                };
                let params = uniform_params(n_curve);
                let template = params
                    .iter()
                    .map(|&s| axis + Vec2::from_polar(ra + (rb - ra) * s, tha + sweep * s))
                    .collect();
                (params, template)
            }
            Strategy::ThroughWire => {
                let wire = scenario.wire.as_ref().ok_or(SurfaceError::NoWire)?;
                let mut route = Vec::with_capacity(wire.polyline.len() + 2);
                route.push(pa);
                route.extend_from_slice(&wire.polyline);
                route.push(pb);
                resample_keeping_vertices(&route, n_curve)
            }
        };
        let mut template: Vec<Vec2> = template;
        let last = template.len() - 1;
        template[0] = pa;
        template[last] = pb;
        let deviation = params
            .iter()
            .zip(&template)
            .map(|(&s, &p)| p - lerp(pa, pb, s))
            .collect();
        Ok(Self {
            strategy,
            params,
            template,
            deviation,
            dwell,
            span: (scenario.start_time(), scenario.end_time()),
        })
    }

    pub fn samples_per_curve(&self) -> usize {
        self.params.len()
    }

    /// Weight of the template deviation at time `t`: 0 at the beam
    /// splitters, 1 throughout the dwell.
    fn blend(&self, t: f64) -> f64 {
        let (ds, de) = self.dwell;
        let (ts, te) = self.span;
        if t >= ds && t <= de {
            1.0
        } else if t < ds {
            if ds > ts {
                ((t - ts) / (ds - ts)).clamp(0.0, 1.0)
            } else {
                1.0
            }
        } else if te > de {
            ((te - t) / (te - de)).clamp(0.0, 1.0)
        } else {
            1.0
        }
    }

    /// The connecting curve at time `t`, endpoints exactly on the worldlines.
    pub fn curve_at(&self, scenario: &Scenario, t: f64) -> Result<Vec<Vec2>, ScenarioError> {
        let xa = scenario.worldlines[0].position(t)?;
        let xb = scenario.worldlines[1].position(t)?;
        let (ds, de) = self.dwell;
        let mut curve: Vec<Vec2> = if t >= ds && t <= de {
            self.template.clone()
        } else {
            let w = self.blend(t);
            self.params
                .iter()
                .zip(&self.deviation)
                .map(|(&s, &dev)| lerp(xa, xb, s) + dev * w)
                .collect()
        };
        let last = curve.len() - 1;
        curve[0] = xa;
        curve[last] = xb;
        Ok(curve)
    }
}

fn uniform_params(n: usize) -> Vec<f64> {
    (0..=n).map(|j| j as f64 / n as f64).collect()
}

/// Subdivides a polyline into roughly `n` pieces proportional to length while
/// keeping every original vertex. Zero-length edges are dropped.
fn resample_keeping_vertices(route: &[Vec2], n: usize) -> (Vec<f64>, Vec<Vec2>) {
    let edges: Vec<(Vec2, Vec2, f64)> = route
        .windows(2)
        .map(|w| (w[0], w[1], w[0].distance(w[1])))
        .filter(|e| e.2 > 0.0)
        .collect();
    let total: f64 = edges.iter().map(|e| e.2).sum();
    let mut points = Vec::with_capacity(n + edges.len() + 1);
    let mut arclen = Vec::with_capacity(n + edges.len() + 1);
    let mut acc = 0.0;
    for &(p, q, len) in &edges {
        let m = ((n as f64 * len / total).round() as usize).max(1);
        for k in 0..m {
            let u = k as f64 / m as f64;
            points.push(lerp(p, q, u));
            arclen.push(acc + len * u);
        }
        acc += len;
    }
    points.push(route[route.len() - 1]);
    arclen.push(total);
    let params = arclen.iter().map(|a| a / total).collect();
    (params, points)
}

/// Discretized spacetime surface: `curves[k]` is the connecting curve at `times[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeSurface {
    pub family: ConnectingCurveFamily,
    pub times: Vec<f64>,
    pub curves: Vec<Vec<Vec2>>,
    /// A dwell curve passes through the solenoid cross-section.
    pub pierces_solenoid: bool,
}

impl SpacetimeSurface {
    pub fn n_cells(&self) -> usize {
        self.times.len() - 1
    }

    /// Quadrilateral patch `(k, j)` in positive orientation: it runs first
    /// along time, then along the curve.
    pub fn patch(&self, k: usize, j: usize) -> [Vec2; 4] {
        [
            self.curves[k][j],
            self.curves[k + 1][j],
            self.curves[k + 1][j + 1],
            self.curves[k][j + 1],
        ]
    }

    /// Outline of time cell `k`: the later curve forward, the earlier one
    /// backward. Equals the union of its patches with shared edges cancelled.
    pub fn cell_polygon(&self, k: usize) -> Vec<Vec2> {
        let mut poly = Vec::with_capacity(2 * self.curves[k].len());
        poly.extend_from_slice(&self.curves[k + 1]);
        poly.extend(self.curves[k].iter().rev());
        poly
    }
}

pub fn build_surface(
    scenario: &Scenario,
    strategy: Strategy,
    resolution: Resolution,
) -> Result<SpacetimeSurface, SurfaceError> {
    if resolution.n_time < 2 {
        return Err(SurfaceError::Resolution);
    }
    let family = ConnectingCurveFamily::new(scenario, strategy, resolution.n_curve)?;
    let (ts, te) = family.span;
    let n = resolution.n_time;
    let times: Vec<f64> = (0..=n)
        .map(|k| {
            if k == n {
                te
            } else {
                ts + (te - ts) * k as f64 / n as f64
            }
        })
        .collect();
    let curves = times
        .iter()
        .map(|&t| family.curve_at(scenario, t))
        .collect::<Result<Vec<_>, _>>()?;
    let sol = &scenario.solenoid;
    let pierces_solenoid = family
        .template
        .windows(2)
        .any(|w| crate::geometry::point_segment_distance(sol.axis_xy, w[0], w[1]) < sol.radius);
    Ok(SpacetimeSurface {
        family,
        times,
        curves,
        pierces_solenoid,
    })
}

fn map_cells<F>(n: usize, f: F) -> Vec<f64>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// `q/ħ ∫_S B da`: per time cell, the field at the cell midpoint times the
/// exact signed area of the cell outline inside the solenoid cross-section.
pub fn magnetic_flux_term(surface: &SpacetimeSurface, scenario: &Scenario) -> f64 {
    let sol = &scenario.solenoid;
    let per_cell = map_cells(surface.n_cells(), |k| {
        let (c0, c1) = (&surface.curves[k], &surface.curves[k + 1]);
        if bbox_misses_disk(c0, sol.axis_xy, sol.radius)
            && bbox_misses_disk(c1, sol.axis_xy, sol.radius)
        {
            return 0.0;
        }
        let area = polygon_disk_signed_area(&surface.cell_polygon(k), sol.axis_xy, sol.radius);
        if area == 0.0 {
            return 0.0;
        }
        let t_mid = 0.5 * (surface.times[k] + surface.times[k + 1]);
        sol.flux_at(t_mid) / sol.cross_section_area() * area
    });
    // fixed summation order keeps results bit-reproducible
    scenario.constants.coupling() * per_cell.iter().sum::<f64>()
}

/// `∫ φ̂/(2πρ) · dr` along a polyline, with the profile continued linearly
/// inside the solenoid. Straight pieces are integrated in closed form:
/// outside the winding the integral is the subtended angle over 2π, inside it
/// is `(p × q) / (2π R²)` relative to the axis.
pub fn azimuthal_line_integral(curve: &[Vec2], axis: Vec2, radius: f64) -> f64 {
    let r_sq = radius * radius;
    let mut total = 0.0;
    for w in curve.windows(2) {
        let (p, q) = (w[0] - axis, w[1] - axis);
        let (params, n) = segment_circle_params(p, q, radius);
        let mut prev = p;
        for &u in params[..n].iter().chain(std::iter::once(&1.0)) {
            let next = if u == 1.0 { q } else { lerp(p, q, u) };
            let mid = lerp(prev, next, 0.5);
            if mid.norm_sq() < r_sq {
                total += prev.cross(next) / r_sq;
            } else {
                total += subtended_angle(Vec2::ZERO, prev, next);
            }
            prev = next;
        }
    }
    total / (2.0 * PI)
}

/// Slice curve used for the field line integral under `model`, or `None`
/// when the slice lies entirely inside conductors.
fn electric_slice(
    scenario: &Scenario,
    curve: Vec<Vec2>,
    t_check: f64,
    model: CageModel,
) -> Result<Option<Vec<Vec2>>, SurfaceError> {
    let [ca, cb] = &scenario.cages;
    let extended = match model {
        CageModel::Conducting => {
            let mut ext = Vec::with_capacity(curve.len() + 2);
            let (first, last) = (curve[0], curve[curve.len() - 1]);
            if first != ca.center && ca.contains(first) {
                ext.push(ca.center);
            }
            ext.extend_from_slice(&curve);
            if last != cb.center && cb.contains(last) {
                ext.push(cb.center);
            }
            ext
        }
        CageModel::Equipotential => curve,
    };
    if curve_inside_conductors(scenario, &extended) {
        return Ok(None);
    }
    let licensed = match model {
        CageModel::Conducting => ev_line_integral_vanishes(scenario, &extended, t_check),
        CageModel::Equipotential => layout_is_half_turn_symmetric(scenario),
    };
    if licensed {
        Ok(Some(extended))
    } else {
        Err(SurfaceError::EvUnmodeled { time: t_check })
    }
}

/// `q/ħ ∫dt ∫ E · dr` across the surface, conductors treated as ideal.
pub fn electric_term(surface: &SpacetimeSurface, scenario: &Scenario) -> Result<f64, SurfaceError> {
    electric_term_with(surface, scenario, CageModel::Conducting)
}

/// Electric term with an explicit cage model.
///
/// The field factorizes as `-Φ'(t) g(r)`, so each time cell contributes
/// `-(Φ(t_{k+1}) - Φ(t_k))` times the line integral of `g` along the slice at
/// the cell midpoint.
pub fn electric_term_with(
    surface: &SpacetimeSurface,
    scenario: &Scenario,
    model: CageModel,
) -> Result<f64, SurfaceError> {
    let sol = &scenario.solenoid;
    let (t0, t1) = (sol.ramp_start, sol.ramp_end);
    let mut total = 0.0;
    // slices repeat while the wavepackets dwell; reuse the last integral
    let mut cache: Option<(Vec<Vec2>, f64)> = None;
    for k in 0..surface.n_cells() {
        let (ta, tb) = (surface.times[k], surface.times[k + 1]);
        let jump = sol.flux_at(tb) - sol.flux_at(ta);
        if jump == 0.0 {
            continue;
        }
        let t_mid = 0.5 * (ta + tb);
        let t_check = 0.5 * (ta.max(t0) + tb.min(t1));
        let curve = surface.family.curve_at(scenario, t_mid)?;
        let g = match &cache {
            Some((c, g)) if *c == curve => *g,
            _ => {
                let g = match electric_slice(scenario, curve.clone(), t_check, model)? {
                    Some(slice) => azimuthal_line_integral(&slice, sol.axis_xy, sol.radius),
                    None => 0.0,
                };
                cache = Some((curve, g));
                g
            }
        };
        total -= jump * g;
    }
    Ok(scenario.constants.coupling() * total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SurfaceEq1,
    PotentialEq3,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureInfo {
    pub n_time: usize,
    pub n_curve: usize,
    /// |result(resolution) - result(resolution / 2)|.
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    pub magnetic_term: f64,
    pub electric_term: f64,
    pub total: f64,
    pub method: Method,
    pub strategy: Option<Strategy>,
    pub quadrature: QuadratureInfo,
    pub breakdown: Option<PathPhaseBreakdown>,
}

fn eq1_terms(
    scenario: &Scenario,
    strategy: Strategy,
    resolution: Resolution,
    model: CageModel,
) -> Result<(f64, f64), SurfaceError> {
    let surface = build_surface(scenario, strategy, resolution)?;
    // the electric term is the one that can refuse, so it goes first
    let electric = electric_term_with(&surface, scenario, model)?;
    let magnetic = magnetic_flux_term(&surface, scenario);
    Ok((magnetic, electric))
}

/// Phase difference `magnetic - electric` over the surface built by `strategy`.
pub fn phase_eq1(
    scenario: &Scenario,
    strategy: Strategy,
    resolution: Resolution,
) -> Result<PhaseResult, SurfaceError> {
    phase_eq1_with(scenario, strategy, resolution, CageModel::Conducting)
}

pub fn phase_eq1_with(
    scenario: &Scenario,
    strategy: Strategy,
    resolution: Resolution,
    model: CageModel,
) -> Result<PhaseResult, SurfaceError> {
    let (magnetic, electric) = eq1_terms(scenario, strategy, resolution, model)?;
    let total = magnetic - electric;
    let (m2, e2) = eq1_terms(scenario, strategy, resolution.halved(), model)?;
    Ok(PhaseResult {
        magnetic_term: magnetic,
        electric_term: electric,
        total,
        method: Method::SurfaceEq1,
        strategy: Some(strategy),
        quadrature: QuadratureInfo {
            n_time: resolution.n_time,
            n_curve: resolution.n_curve,
            error_estimate: (total - (m2 - e2)).abs(),
        },
        breakdown: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{build_paper_scenario, GeometryParams, ScenarioKind};

    const TOL: f64 = 1e-9;
    const RES: Resolution = Resolution {
        n_time: 256,
        n_curve: 64,
    };

    fn scen(kind: ScenarioKind, pi: f64, pf: f64) -> Scenario {
        build_paper_scenario(kind, pi, pf, 2, &GeometryParams::default()).unwrap()
    }

    #[test]
    fn azimuthal_integral_of_half_circle() {
        let arc: Vec<Vec2> = (0..=10)
            .map(|k| Vec2::from_polar(3.0, PI * k as f64 / 10.0))
            .collect();
        assert!((azimuthal_line_integral(&arc, Vec2::ZERO, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn azimuthal_integral_along_diameter_vanishes() {
        let d = [Vec2::new(5.0, 0.0), Vec2::new(-5.0, 0.0)];
        assert!(azimuthal_line_integral(&d, Vec2::ZERO, 1.0).abs() < 1e-15);
    }

    #[test]
    fn azimuthal_integral_closed_loop_through_interior() {
        // loop enclosing a chord of the core: interior part picks up only the enclosed flux fraction
        let sq = [
            Vec2::new(0.5, -3.0),
            Vec2::new(3.0, -3.0),
            Vec2::new(3.0, 3.0),
            Vec2::new(0.5, 3.0),
            Vec2::new(0.5, -3.0),
        ];
        let frac = azimuthal_line_integral(&sq, Vec2::ZERO, 1.0);
        let seg = (0.5f64).acos() - 0.5 * (1.0 - 0.25f64).sqrt();
        assert!((frac - seg / PI).abs() < 1e-14, "{frac}");
    }

    #[test]
    fn boundary_is_the_worldlines() {
        let s = scen(ScenarioKind::Fig1, 1.0, 2.0);
        let surf = build_surface(&s, Strategy::LeftOfSolenoid, RES).unwrap();
        for (t, c) in surf.times.iter().zip(&surf.curves) {
            assert_eq!(c[0], s.worldlines[0].position(*t).unwrap());
            assert_eq!(*c.last().unwrap(), s.worldlines[1].position(*t).unwrap());
        }
        // degenerate at both beam splitters
        let first = &surf.curves[0];
        assert!(first.iter().all(|p| *p == first[0]));
        let last = surf.curves.last().unwrap();
        assert!(last.iter().all(|p| *p == last[0]));
    }

    #[test]
    fn fig1_left_and_right_terms() {
        let (pi, pf) = (2.0 * PI, 4.0 * PI);
        let s = scen(ScenarioKind::Fig1, pi, pf);
        let left = phase_eq1(&s, Strategy::LeftOfSolenoid, RES).unwrap();
        assert!((left.magnetic_term - pi).abs() < TOL);
        assert!((left.electric_term + PI).abs() < TOL);
        assert!((left.total - 3.0 * PI).abs() < TOL);
        let right = phase_eq1(&s, Strategy::RightOfSolenoid, RES).unwrap();
        assert!((right.magnetic_term - pf).abs() < TOL);
        assert!((right.total - 3.0 * PI).abs() < TOL);
        let straight = phase_eq1(&s, Strategy::Straight, RES).unwrap();
        assert!(straight.electric_term.abs() < TOL);
        assert!((straight.total - 3.0 * PI).abs() < TOL);
    }

    #[test]
    fn fig2c_through_wire() {
        let s = scen(ScenarioKind::Fig2c, 2.0 * PI, 6.0 * PI);
        let r = phase_eq1(&s, Strategy::ThroughWire, RES).unwrap();
        assert_eq!(r.electric_term, 0.0);
        assert!((r.total - 6.0 * PI).abs() < TOL);
    }

    #[test]
    fn through_wire_needs_wire() {
        let s = scen(ScenarioKind::Fig1, 1.0, 2.0);
        assert_eq!(
            build_surface(&s, Strategy::ThroughWire, RES).unwrap_err(),
            SurfaceError::NoWire
        );
    }

    #[test]
    fn asymmetric_layout_rejects_free_curves() {
        let s = scen(ScenarioKind::Fig2a, 1.0, 2.0);
        let err = phase_eq1(&s, Strategy::LeftOfSolenoid, RES).unwrap_err();
        assert!(matches!(err, SurfaceError::EvUnmodeled { .. }));
        // no ramp: nothing to model
        let st = scen(ScenarioKind::Fig2a, 1.5, 1.5);
        let r = phase_eq1(&st, Strategy::LeftOfSolenoid, RES).unwrap();
        assert!((r.total - 1.5).abs() < TOL);
    }

    #[test]
    fn straight_pierce_is_flagged() {
        let s = scen(ScenarioKind::Fig1, 1.0, 2.0);
        assert!(
            build_surface(&s, Strategy::Straight, RES)
                .unwrap()
                .pierces_solenoid
        );
        assert!(
            !build_surface(&s, Strategy::LeftOfSolenoid, RES)
                .unwrap()
                .pierces_solenoid
        );
    }

    #[test]
    fn fig3_static_flux_term_vanishes() {
        let s = scen(ScenarioKind::Fig3, 1.3, 1.3);
        for strategy in [
            Strategy::Straight,
            Strategy::ThroughWire,
            Strategy::LeftOfSolenoid,
        ] {
            let r = phase_eq1(&s, strategy, RES).unwrap();
            assert!(r.total.abs() < TOL, "{strategy:?} {}", r.total);
        }
        let straight = build_surface(&s, Strategy::Straight, RES).unwrap();
        assert_eq!(magnetic_flux_term(&straight, &s), 0.0);
    }

    #[test]
    fn patch_orientation_matches_cell() {
        let s = scen(ScenarioKind::Fig1, 1.0, 2.0);
        let surf = build_surface(&s, Strategy::LeftOfSolenoid, RES).unwrap();
        let k = 10;
        let patches: f64 = (0..surf.curves[k].len() - 1)
            .map(|j| crate::geometry::polygon_signed_area(&surf.patch(k, j)))
            .sum();
        let cell = crate::geometry::polygon_signed_area(&surf.cell_polygon(k));
        assert!((patches - cell).abs() < 1e-9 * cell.abs().max(1.0));
        assert!(cell > 0.0);
    }
}
