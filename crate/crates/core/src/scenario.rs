//! Interferometer worldlines, Faraday cages, connecting wires and timing, with
//! builders for the four canonical layouts and a validator that decides
//! whether a scenario is inside the model's competence.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{
    layout_is_half_turn_symmetric, total_field_at, PhysicalConstants, RampShape, SolenoidModel,
};
use crate::geometry::{lerp, point_segment_distance, Vec2};
use crate::topology::winding_number;

/// Samples per worldline used by the field-exposure check.
const EXPOSURE_SAMPLES: usize = 2000;
/// Vertices per full turn when polylines approximate arcs.
const ARC_VERTICES_PER_TURN: usize = 128;
/// Relative tolerance for "same position" comparisons.
const POSITION_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("time {t} outside worldline span [{start}, {end}]")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },
    #[error("worldline has no waypoints")]
    EmptyWorldline,
    #[error("{0} requires a nonzero number of wire turns")]
    MissingTurns(ScenarioKind),
    #[error("{0} has no canonical builder")]
    NoBuilder(ScenarioKind),
    #[error("both worldlines are never stationary together across the ramp window")]
    NoDwell,
    #[error("scenario failed validation: {}", .0.iter().map(|v| v.code.as_str()).collect::<Vec<_>>().join(", "))]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathLabel {
    PathA,
    PathB,
}

impl PathLabel {
    pub fn index(self) -> usize {
        match self {
            PathLabel::PathA => 0,
            PathLabel::PathB => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub time: f64,
    pub position: Vec2,
}

impl Waypoint {
    pub fn new(time: f64, position: Vec2) -> Self {
        Self { time, position }
    }
}

/// Piecewise-linear spacetime trajectory of one wavepacket center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Worldline {
    pub label: PathLabel,
    pub waypoints: Vec<Waypoint>,
}

impl Worldline {
    pub fn start_time(&self) -> f64 {
        self.waypoints.first().map_or(f64::NAN, |w| w.time)
    }

    pub fn end_time(&self) -> f64 {
        self.waypoints.last().map_or(f64::NAN, |w| w.time)
    }

    /// Linear interpolation between waypoints; exact at waypoint times.
    pub fn position(&self, t: f64) -> Result<Vec2, ScenarioError> {
        let wps = &self.waypoints;
        let (first, last) = match (wps.first(), wps.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(ScenarioError::EmptyWorldline),
        };
        if !(t >= first.time && t <= last.time) {
            return Err(ScenarioError::TimeOutOfRange {
                t,
                start: first.time,
                end: last.time,
            });
        }
        // first waypoint with time >= t
        let i = wps.partition_point(|w| w.time < t);
        let hi = &wps[i];
        if hi.time == t || i == 0 {
            return Ok(hi.position);
        }
        let lo = &wps[i - 1];
        let s = (t - lo.time) / (hi.time - lo.time);
        Ok(lerp(lo.position, hi.position, s))
    }

    /// Maximal interval containing `[from, to]` over which the worldline does
    /// not move, or `None` if it moves somewhere inside `[from, to]`.
    pub fn stationary_interval(&self, from: f64, to: f64, tol: f64) -> Option<(f64, f64)> {
        let p = self.position(from).ok()?;
        let same = |q: Vec2| q.distance(p) <= tol;
        if !same(self.position(to).ok()?) {
            return None;
        }
        let wps = &self.waypoints;
        if wps
            .iter()
            .any(|w| w.time > from && w.time < to && !same(w.position))
        {
            return None;
        }
        // walk outwards through waypoints sharing the position
        let mut start = from;
        for w in wps.iter().rev().filter(|w| w.time <= from) {
            if same(w.position) {
                start = w.time;
            } else {
                break;
            }
        }
        let mut end = to;
        for w in wps.iter().filter(|w| w.time >= to) {
            if same(w.position) {
                end = w.time;
            } else {
                break;
            }
        }
        Some((start, end))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaradayCage {
    pub center: Vec2,
    pub radius: f64,
}

impl FaradayCage {
    pub fn contains(&self, p: Vec2) -> bool {
        p.distance(self.center) <= self.radius * (1.0 + 1e-12)
    }

    /// Δθ: angle between the two tangent lines drawn from `axis` to the cage.
    pub fn angular_extent(&self, axis: Vec2) -> f64 {
        let d = self.center.distance(axis);
        if d <= self.radius {
            return 2.0 * PI;
        }
        2.0 * (self.radius / d).asin()
    }

    /// The two tangent points seen from `axis`, clockwise one first.
    pub fn tangent_points(&self, axis: Vec2) -> [Vec2; 2] {
        let rel = self.center - axis;
        let d = rel.norm();
        let half = (self.radius / d).asin();
        let reach = (d * d - self.radius * self.radius).sqrt();
        let base = rel.angle();
        [
            axis + Vec2::from_polar(reach, base - half),
            axis + Vec2::from_polar(reach, base + half),
        ]
    }
}

/// A thin ideal conductor joining cage a to cage b.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WirePath {
    /// Ordered vertices from the center of cage a to the center of cage b.
    /// Crossings of the polyline with itself are insulated.
    pub polyline: Vec<Vec2>,
    /// Declared winding around the solenoid axis: accumulated angle / 2π of
    /// the open polyline. Half-integers for the half-turn wires.
    pub turns: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Fig1,
    Fig2a,
    Fig2c,
    Fig3,
    #[default]
    Custom,
}

impl ScenarioKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Fig1 => "fig1",
            ScenarioKind::Fig2a => "fig2a",
            ScenarioKind::Fig2c => "fig2c",
            ScenarioKind::Fig3 => "fig3",
            ScenarioKind::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Some(Self::Fig1),
            "fig2a" => Some(Self::Fig2a),
            "fig2c" => Some(Self::Fig2c),
            "fig3" => Some(Self::Fig3),
            "custom" => Some(Self::Custom),
            _ => None,
        }
    }

    pub const CANONICAL: [ScenarioKind; 4] = [Self::Fig1, Self::Fig2a, Self::Fig2c, Self::Fig3];
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The full experiment: solenoid, two cages (index 0 holds path a), an
/// optional wire, and the two worldlines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub solenoid: SolenoidModel,
    pub cages: [FaradayCage; 2],
    pub wire: Option<WirePath>,
    pub worldlines: [Worldline; 2],
    pub constants: PhysicalConstants,
    pub kind: ScenarioKind,
}

impl Scenario {
    pub fn worldline(&self, path: PathLabel) -> &Worldline {
        &self.worldlines[path.index()]
    }

    pub fn start_time(&self) -> f64 {
        self.worldlines[0].start_time()
    }

    pub fn end_time(&self) -> f64 {
        self.worldlines[0].end_time()
    }

    /// Largest distance of any geometric feature from the solenoid axis.
    pub fn length_scale(&self) -> f64 {
        let axis = self.solenoid.axis_xy;
        let mut scale = self.solenoid.radius.abs();
        for c in &self.cages {
            scale = scale.max(c.center.distance(axis) + c.radius.abs());
        }
        for w in &self.worldlines {
            for wp in &w.waypoints {
                scale = scale.max(wp.position.distance(axis));
            }
        }
        if let Some(wire) = &self.wire {
            for p in &wire.polyline {
                scale = scale.max(p.distance(axis));
            }
        }
        scale
    }

    /// Containment tolerance of the ideal 1D wire.
    pub fn wire_tube_radius(&self) -> f64 {
        1e-3 * self.solenoid.radius
    }

    pub(crate) fn position_tol(&self) -> f64 {
        POSITION_TOL * self.length_scale()
    }

    /// Interval during which both worldlines sit still, around the ramp.
    pub fn dwell_window(&self) -> Result<(f64, f64), ScenarioError> {
        let (t0, t1) = (self.solenoid.ramp_start, self.solenoid.ramp_end);
        let tol = self.position_tol();
        let a = self.worldlines[0]
            .stationary_interval(t0, t1, tol)
            .ok_or(ScenarioError::NoDwell)?;
        let b = self.worldlines[1]
            .stationary_interval(t0, t1, tol)
            .ok_or(ScenarioError::NoDwell)?;
        Ok((a.0.max(b.0), a.1.min(b.1)))
    }

    /// Where each wavepacket sits during the ramp.
    pub fn dwell_positions(&self) -> Result<[Vec2; 2], ScenarioError> {
        let t0 = self.solenoid.ramp_start;
        Ok([
            self.worldlines[0].position(t0)?,
            self.worldlines[1].position(t0)?,
        ])
    }

    /// Signed wire winding (zero without a wire).
    pub fn wire_turns(&self) -> f64 {
        self.wire.as_ref().map_or(0.0, |w| w.turns)
    }
}

/// Machine-readable violation codes reported by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    HbarZero,
    SolenoidRadius,
    RampOrder,
    CageRadius,
    CageOverlap,
    CageSolenoidOverlap,
    WorldlineEmpty,
    WorldlineTimeOrder,
    WorldlineEndpoints,
    WorldlineLabels,
    RampOutsideDwell,
    WorldlineEntersSolenoid,
    FieldExposure,
    WireEndpoints,
    WireCrossesSolenoid,
    WireTurnsMismatch,
    EvModelInapplicable,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::HbarZero => "HBAR_ZERO",
            Self::SolenoidRadius => "SOLENOID_RADIUS",
            Self::RampOrder => "RAMP_ORDER",
            Self::CageRadius => "CAGE_RADIUS",
            Self::CageOverlap => "CAGE_OVERLAP",
            Self::CageSolenoidOverlap => "CAGE_SOLENOID_OVERLAP",
            Self::WorldlineEmpty => "WORLDLINE_EMPTY",
            Self::WorldlineTimeOrder => "WORLDLINE_TIME_ORDER",
            Self::WorldlineEndpoints => "WORLDLINE_ENDPOINTS",
            Self::WorldlineLabels => "WORLDLINE_LABELS",
            Self::RampOutsideDwell => "RAMP_OUTSIDE_DWELL",
            Self::WorldlineEntersSolenoid => "WORLDLINE_ENTERS_SOLENOID",
            Self::FieldExposure => "FIELD_EXPOSURE",
            Self::WireEndpoints => "WIRE_ENDPOINTS",
            Self::WireCrossesSolenoid => "WIRE_CROSSES_SOLENOID",
            Self::WireTurnsMismatch => "WIRE_TURNS_MISMATCH",
            Self::EvModelInapplicable => "EV_MODEL_INAPPLICABLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code.as_str(), self.message)
    }
}

fn violation(code: ViolationCode, message: impl Into<String>) -> Violation {
    Violation {
        code,
        message: message.into(),
    }
}

/// Checks every structural invariant plus the physical premise that the
/// wavepackets never meet a nonzero field. An empty list means valid.
pub fn validate(scenario: &Scenario) -> Vec<Violation> {
    use ViolationCode::*;
    let mut out = Vec::new();
    let s = &scenario.solenoid;

    if scenario.constants.hbar == 0.0 || !scenario.constants.hbar.is_finite() {
        out.push(violation(HbarZero, "hbar must be finite and nonzero"));
    }
    if !(s.radius > 0.0) || !s.radius.is_finite() {
        out.push(violation(
            SolenoidRadius,
            format!("solenoid radius {} must be positive", s.radius),
        ));
    }
    if !(s.ramp_start < s.ramp_end) {
        out.push(violation(
            RampOrder,
            format!(
                "ramp_start {} must precede ramp_end {}",
                s.ramp_start, s.ramp_end
            ),
        ));
    }

    for (i, c) in scenario.cages.iter().enumerate() {
        if !(c.radius > 0.0) {
            out.push(violation(
                CageRadius,
                format!("cage {i} radius {} must be positive", c.radius),
            ));
        }
        if c.center.distance(s.axis_xy) <= c.radius + s.radius {
            out.push(violation(
                CageSolenoidOverlap,
                format!("cage {i} overlaps the solenoid"),
            ));
        }
    }
    let [ca, cb] = &scenario.cages;
    if ca.center.distance(cb.center) <= ca.radius + cb.radius {
        out.push(violation(CageOverlap, "the two cages overlap"));
    }

    let mut worldlines_ok = true;
    for (i, w) in scenario.worldlines.iter().enumerate() {
        let expected = if i == 0 {
            PathLabel::PathA
        } else {
            PathLabel::PathB
        };
        if w.label != expected {
            out.push(violation(
                WorldlineLabels,
                format!("worldline {i} should be labelled {expected:?}"),
            ));
        }
        if w.waypoints.len() < 2 {
            out.push(violation(
                WorldlineEmpty,
                format!("worldline {i} needs at least two waypoints"),
            ));
            worldlines_ok = false;
            continue;
        }
        if w.waypoints.windows(2).any(|p| !(p[1].time > p[0].time)) {
            out.push(violation(
                WorldlineTimeOrder,
                format!("worldline {i} times must strictly increase"),
            ));
            worldlines_ok = false;
        }
        let touches = w
            .waypoints
            .windows(2)
            .any(|p| point_segment_distance(s.axis_xy, p[0].position, p[1].position) <= s.radius);
        if touches {
            out.push(violation(
                WorldlineEntersSolenoid,
                format!("worldline {i} enters the solenoid"),
            ));
        }
    }
    if worldlines_ok {
        let [a, b] = &scenario.worldlines;
        let tol = scenario.position_tol();
        let (fa, fb) = (a.waypoints[0], b.waypoints[0]);
        let (la, lb) = (
            a.waypoints[a.waypoints.len() - 1],
            b.waypoints[b.waypoints.len() - 1],
        );
        if fa.time != fb.time
            || la.time != lb.time
            || fa.position.distance(fb.position) > tol
            || la.position.distance(lb.position) > tol
        {
            out.push(violation(
                WorldlineEndpoints,
                "worldlines must share their first and last waypoints",
            ));
        }
        check_dwell(scenario, &mut out);
        check_exposure(scenario, &mut out);
    }

    match &scenario.wire {
        Some(wire) => check_wire(scenario, wire, &mut out),
        None => {
            if !layout_is_half_turn_symmetric(scenario) {
                out.push(violation(
                    EvModelInapplicable,
                    "without a wire the cages must be symmetric under a half turn about the solenoid axis",
                ));
            }
        }
    }
    out
}

fn check_dwell(scenario: &Scenario, out: &mut Vec<Violation>) {
    let s = &scenario.solenoid;
    if !(s.ramp_start < s.ramp_end) {
        return;
    }
    let in_span = scenario
        .worldlines
        .iter()
        .all(|w| w.start_time() < s.ramp_start && s.ramp_end < w.end_time());
    let dwell = if in_span {
        scenario.dwell_window().ok()
    } else {
        None
    };
    let strictly_inside = matches!(dwell, Some((a, b)) if a < s.ramp_start && s.ramp_end < b);
    let in_cages = strictly_inside
        && scenario
            .worldlines
            .iter()
            .zip(&scenario.cages)
            .all(|(w, c)| {
                w.position(s.ramp_start)
                    .map(|p| c.contains(p))
                    .unwrap_or(false)
            });
    if !in_cages {
        out.push(violation(
            ViolationCode::RampOutsideDwell,
            "ramp outside cage dwell: both wavepackets must sit still inside their cages for the whole ramp",
        ));
    }
}

fn check_exposure(scenario: &Scenario, out: &mut Vec<Violation>) {
    for (i, w) in scenario.worldlines.iter().enumerate() {
        let (t_start, t_end) = (w.start_time(), w.end_time());
        let mut times: Vec<f64> = (0..=EXPOSURE_SAMPLES)
            .map(|k| t_start + (t_end - t_start) * k as f64 / EXPOSURE_SAMPLES as f64)
            .collect();
        times.extend(w.waypoints.iter().map(|wp| wp.time));
        for t in times {
            let Ok(p) = w.position(t) else { continue };
            let f = total_field_at(scenario, p, t);
            if f.e_field != Vec2::ZERO || f.b_field != 0.0 {
                out.push(violation(
                    ViolationCode::FieldExposure,
                    format!("worldline {i} meets a nonzero field at t = {t}"),
                ));
                break;
            }
        }
    }
}

fn check_wire(scenario: &Scenario, wire: &WirePath, out: &mut Vec<Violation>) {
    use ViolationCode::*;
    let s = &scenario.solenoid;
    let tol = scenario.position_tol().max(1e-12);
    let (Some(&first), Some(&last)) = (wire.polyline.first(), wire.polyline.last()) else {
        out.push(violation(WireEndpoints, "wire polyline is empty"));
        return;
    };
    if wire.polyline.len() < 2
        || first.distance(scenario.cages[0].center) > tol
        || last.distance(scenario.cages[1].center) > tol
    {
        out.push(violation(
            WireEndpoints,
            "wire must run from the center of cage a to the center of cage b",
        ));
    }
    if wire
        .polyline
        .windows(2)
        .any(|w| point_segment_distance(s.axis_xy, w[0], w[1]) <= s.radius)
    {
        out.push(violation(
            WireCrossesSolenoid,
            "wire passes through the solenoid",
        ));
        return;
    }
    match winding_number(&wire.polyline, s.axis_xy, false) {
        Ok(w) if (w - wire.turns).abs() <= 1e-9 => {}
        Ok(w) => out.push(violation(
            WireTurnsMismatch,
            format!("declared turns {} but the wire winds {w}", wire.turns),
        )),
        Err(e) => out.push(violation(WireTurnsMismatch, e.to_string())),
    }
}

/// Clock of the canonical worldlines. Both wavepackets reach their cages at
/// `arrive`, the ramp runs inside `[arrive, leave]`, and they recombine at `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub start: f64,
    pub arrive: f64,
    pub ramp_start: f64,
    pub ramp_end: f64,
    pub leave: f64,
    pub end: f64,
}

impl Default for Timing {
    fn default() -> Self {
        Self {
            start: 0.0,
            arrive: 1.0,
            ramp_start: 1.25,
            ramp_end: 1.75,
            leave: 2.0,
            end: 3.0,
        }
    }
}

/// Geometry overrides for the canonical builders. Unset values follow the
/// default layout: cages at distance `d = 10 R` from the interferometer
/// center, cage radius `d/20`, beam splitters at `±1.5 d`, and (for the
/// external-solenoid layout) the solenoid `2 d` to the side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeometryParams {
    pub solenoid_radius: f64,
    pub cage_distance: Option<f64>,
    pub cage_radius: Option<f64>,
    pub half_height: Option<f64>,
    pub solenoid_offset: Option<f64>,
    /// Rigid rotation of the whole layout about the solenoid axis.
    pub rotation: f64,
    pub axis: Vec2,
    pub ramp_shape: RampShape,
    pub timing: Timing,
}

impl Default for GeometryParams {
    fn default() -> Self {
        Self {
            solenoid_radius: 1.0,
            cage_distance: None,
            cage_radius: None,
            half_height: None,
            solenoid_offset: None,
            rotation: 0.0,
            axis: Vec2::ZERO,
            ramp_shape: RampShape::Linear,
            timing: Timing::default(),
        }
    }
}

impl GeometryParams {
    pub fn cage_distance(&self) -> f64 {
        self.cage_distance.unwrap_or(10.0 * self.solenoid_radius)
    }

    pub fn cage_radius(&self) -> f64 {
        self.cage_radius.unwrap_or(self.cage_distance() / 20.0)
    }

    pub fn half_height(&self) -> f64 {
        self.half_height.unwrap_or(1.5 * self.cage_distance())
    }

    pub fn solenoid_offset(&self) -> f64 {
        self.solenoid_offset.unwrap_or(2.0 * self.cage_distance())
    }
}

/// Points along an arc about `center`, from angle `from` sweeping `sweep`
/// radians while the radius moves linearly from `r0` to `r1`. Endpoints
/// excluded.
fn arc_interior(center: Vec2, r0: f64, r1: f64, from: f64, sweep: f64) -> Vec<Vec2> {
    let n = ((sweep.abs() / (2.0 * PI)) * ARC_VERTICES_PER_TURN as f64)
        .ceil()
        .max(2.0) as usize;
    (1..n)
        .map(|k| {
            let u = k as f64 / n as f64;
            center + Vec2::from_polar(r0 + (r1 - r0) * u, from + sweep * u)
        })
        .collect()
}

/// Wire of the half-turn layouts: radial stub inward, a half circle on one
/// side of the solenoid, radial stub back out. `ccw` routes it through the
/// side reached by turning counterclockwise from cage a.
fn half_turn_wire(d: f64, ccw: bool) -> Vec<Vec2> {
    let r = 0.5 * d;
    let sweep = if ccw { PI } else { -PI };
    let mut poly = vec![Vec2::new(d, 0.0), Vec2::new(r, 0.0)];
    poly.extend(arc_interior(Vec2::ZERO, r, r, 0.0, sweep));
    poly.push(Vec2::new(-r, 0.0));
    poly.push(Vec2::new(-d, 0.0));
    poly
}

/// Wire of the external-solenoid layout, in the interferometer frame with the
/// solenoid at `(x_s, 0)`: out to the solenoid, an inward spiral of `turns`
/// revolutions, then back around the far side of the lower beam splitter.
fn spiral_wire(
    d: f64,
    cage_r: f64,
    x_s: f64,
    sol_r: f64,
    half_height: f64,
    turns: i32,
) -> Vec<Vec2> {
    let center = Vec2::new(x_s, 0.0);
    let gap = x_s - d - cage_r;
    let r_start = sol_r + 0.7 * (gap - sol_r);
    let r_end = sol_r + 0.25 * (r_start - sol_r);
    let n = turns.unsigned_abs() as f64;
    let sweep = 2.0 * PI * n;
    let return_y = -(half_height + 0.5 * d);

    let mut poly = vec![Vec2::new(d, 0.0), Vec2::new(x_s - r_start, 0.0)];
    poly.extend(arc_interior(center, r_start, r_end, PI, sweep));
    poly.push(Vec2::new(x_s - r_end, 0.0));
    poly.push(Vec2::new(x_s - r_end, return_y));
    poly.push(Vec2::new(-d, return_y));
    poly.push(Vec2::new(-d, 0.0));
    if turns < 0 {
        for p in &mut poly {
            p.y = -p.y;
        }
    }
    poly
}

/// Builds one of the canonical layouts.
///
/// The solenoid sits at `params.axis`. Cage a (path a) is on the +x side and
/// cage b on the -x side of the interferometer before the rigid rotation;
/// the beam splitters sit on the symmetry axis below and above. `turns` is
/// only read for [`ScenarioKind::Fig3`], where its sign picks the winding
/// direction (positive = counterclockwise).
pub fn build_paper_scenario(
    kind: ScenarioKind,
    flux_initial: f64,
    flux_final: f64,
    turns: i32,
    params: &GeometryParams,
) -> Result<Scenario, ScenarioError> {
    let d = params.cage_distance();
    let cage_r = params.cage_radius();
    let h = params.half_height();
    let sol_r = params.solenoid_radius;

    // interferometer frame: where the solenoid axis sits
    let (frame_axis, wire) = match kind {
        ScenarioKind::Fig1 => (Vec2::ZERO, None),
        ScenarioKind::Fig2a => (Vec2::ZERO, Some((half_turn_wire(d, true), 0.5))),
        ScenarioKind::Fig2c => (Vec2::ZERO, Some((half_turn_wire(d, false), -0.5))),
        ScenarioKind::Fig3 => {
            if turns == 0 {
                return Err(ScenarioError::MissingTurns(kind));
            }
            let x_s = params.solenoid_offset();
            (
                Vec2::new(x_s, 0.0),
                Some((spiral_wire(d, cage_r, x_s, sol_r, h, turns), turns as f64)),
            )
        }
        ScenarioKind::Custom => return Err(ScenarioError::NoBuilder(kind)),
    };
    let place = |p: Vec2| params.axis + (p - frame_axis).rotate(params.rotation);

    let timing = params.timing;
    let bs1 = place(Vec2::new(0.0, -h));
    let bs2 = place(Vec2::new(0.0, h));
    let ra = place(Vec2::new(d, 0.0));
    let rb = place(Vec2::new(-d, 0.0));
    let legs = |cage: Vec2, label| Worldline {
        label,
        waypoints: vec![
            Waypoint::new(timing.start, bs1),
            Waypoint::new(timing.arrive, cage),
            Waypoint::new(timing.leave, cage),
            Waypoint::new(timing.end, bs2),
        ],
    };

    let scenario = Scenario {
        solenoid: SolenoidModel {
            axis_xy: params.axis,
            radius: sol_r,
            flux_initial,
            flux_final,
            ramp_start: timing.ramp_start,
            ramp_end: timing.ramp_end,
            ramp_shape: params.ramp_shape,
        },
        cages: [
            FaradayCage {
                center: ra,
                radius: cage_r,
            },
            FaradayCage {
                center: rb,
                radius: cage_r,
            },
        ],
        wire: wire.map(|(poly, turns)| WirePath {
            polyline: poly.into_iter().map(place).collect(),
            turns,
        }),
        worldlines: [legs(ra, PathLabel::PathA), legs(rb, PathLabel::PathB)],
        constants: PhysicalConstants::default(),
        kind,
    };
    let violations = validate(&scenario);
    if violations.is_empty() {
        Ok(scenario)
    } else {
        Err(ScenarioError::Invalid(violations))
    }
}

/// The no-wire symmetric layout with finite cages, where each wavepacket
/// enters its cage at the tangent point facing the lower beam splitter, waits
/// there through the ramp, and leaves through the opposite tangent point.
pub fn build_finite_cage_scenario(
    flux_initial: f64,
    flux_final: f64,
    params: &GeometryParams,
) -> Result<Scenario, ScenarioError> {
    let mut scenario =
        build_paper_scenario(ScenarioKind::Fig1, flux_initial, flux_final, 0, params)?;
    let axis = scenario.solenoid.axis_xy;
    let timing = params.timing;
    let bs1 = scenario.worldlines[0].waypoints[0].position;
    let bs2 = scenario.worldlines[0].waypoints[3].position;
    let exit_time = 0.5 * (timing.leave + timing.end);
    for (w, cage) in scenario.worldlines.iter_mut().zip(scenario.cages.iter()) {
        let [p, q] = cage.tangent_points(axis);
        // the tangent point nearer the entrance beam splitter comes first
        let (entry, exit) = if p.distance(bs1) <= q.distance(bs1) {
            (p, q)
        } else {
            (q, p)
        };
        w.waypoints = vec![
            Waypoint::new(timing.start, bs1),
            Waypoint::new(timing.arrive, entry),
            Waypoint::new(timing.leave, entry),
            Waypoint::new(exit_time, exit),
            Waypoint::new(timing.end, bs2),
        ];
    }
    let violations = validate(&scenario);
    if violations.is_empty() {
        Ok(scenario)
    } else {
        Err(ScenarioError::Invalid(violations))
    }
}
