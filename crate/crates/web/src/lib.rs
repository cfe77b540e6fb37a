//! Browser bindings: each export takes plain numbers and returns a JSON string
//! for the static page in `www/`.

use abphase::potential::{cage_radius_for_angle, finite_cage_deviation};
use abphase::surface::build_surface;
use abphase::{
    build_paper_scenario, phase_eq1, phase_eq3, topology_report, GeometryParams, Resolution,
    ScenarioKind, Strategy, Vec2,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Interactive resolution; coarse enough to redraw while a slider moves.
const DEMO_RES: Resolution = Resolution {
    n_time: 256,
    n_curve: 96,
};

fn kind(name: &str) -> Result<ScenarioKind, String> {
    match ScenarioKind::parse(name) {
        Some(ScenarioKind::Custom) | None => Err(format!("unknown scenario '{name}'")),
        Some(k) => Ok(k),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo payloads serialize")
}

#[derive(Serialize)]
struct CurvePoint {
    phi_f: f64,
    eq3: f64,
    eq1: Option<f64>,
    closed_form: Option<f64>,
}

#[derive(Serialize)]
struct PhaseCurve {
    kind: &'static str,
    phi_i: f64,
    strategy: &'static str,
    points: Vec<CurvePoint>,
}

/// Surface-route samples per curve; the potential route fills every step.
const EQ1_SAMPLES: usize = 12;

/// Phase difference against the final flux, for both formulations.
pub fn phase_curve_json(
    name: &str,
    phi_i: f64,
    phi_f_max: f64,
    steps: usize,
    turns: i32,
) -> Result<String, String> {
    let kind = kind(name)?;
    let steps = steps.clamp(2, 400);
    // fields scale with the flux change, so validating one nonzero change covers the curve
    let base = build_paper_scenario(kind, phi_i, phi_i + 1.0, turns, &GeometryParams::default())
        .map_err(|e| e.to_string())?;
    let strategy = if base.wire.is_some() {
        Strategy::ThroughWire
    } else {
        Strategy::LeftOfSolenoid
    };
    let stride = steps.div_ceil(EQ1_SAMPLES);
    let mut points = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let phi_f = -phi_f_max + 2.0 * phi_f_max * k as f64 / steps as f64;
        let mut s = base.clone();
        s.solenoid.flux_final = phi_f;
        let eq3 = phase_eq3(&s).map_err(|e| e.to_string())?.total;
        let eq1 = if k % stride == 0 || k == steps {
            phase_eq1(&s, strategy, DEMO_RES).ok().map(|r| r.total)
        } else {
            None
        };
        let closed_form =
            abphase::closed_form_phase(kind, phi_i, phi_f, s.wire_turns(), &s.constants);
        points.push(CurvePoint {
            phi_f,
            eq3,
            eq1,
            closed_form,
        });
    }
    Ok(to_json(&PhaseCurve {
        kind: kind.as_str(),
        phi_i,
        strategy: strategy.as_str(),
        points,
    }))
}

#[derive(Serialize)]
struct Slice {
    time: f64,
    flux: f64,
    curve: Vec<Vec2>,
}

#[derive(Serialize)]
struct SurfaceView {
    solenoid: (Vec2, f64),
    cages: Vec<(Vec2, f64)>,
    wire: Option<Vec<Vec2>>,
    worldlines: Vec<Vec<Vec2>>,
    ramp: (f64, f64),
    slices: Vec<Slice>,
    magnetic_term: Option<f64>,
    electric_term: Option<f64>,
    total: Option<f64>,
    status: String,
    meets_b: bool,
    meets_e: bool,
}

/// Connecting curves of one surface at `n_slices` times, with the phase it yields.
pub fn surface_slices_json(
    name: &str,
    strategy: &str,
    phi_i: f64,
    phi_f: f64,
    turns: i32,
    n_slices: usize,
) -> Result<String, String> {
    let kind = kind(name)?;
    let strategy =
        Strategy::parse(strategy).ok_or_else(|| format!("unknown strategy '{strategy}'"))?;
    let s = build_paper_scenario(kind, phi_i, phi_f, turns, &GeometryParams::default())
        .map_err(|e| e.to_string())?;
    let surface = build_surface(&s, strategy, DEMO_RES).map_err(|e| e.to_string())?;
    let n = n_slices.clamp(2, 200);
    let (t0, t1) = (s.start_time(), s.end_time());
    let slices = (0..=n)
        .map(|k| {
            let t = t0 + (t1 - t0) * k as f64 / n as f64;
            Ok(Slice {
                time: t,
                flux: s.solenoid.flux_at(t),
                curve: surface.family.curve_at(&s, t).map_err(|e| e.to_string())?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let overlap = abphase::topology::surface_field_overlap(&surface, &s);
    let (mag, ele, tot, status) = match phase_eq1(&s, strategy, DEMO_RES) {
        Ok(r) => (
            Some(r.magnetic_term),
            Some(r.electric_term),
            Some(r.total),
            "ok".to_string(),
        ),
        Err(e) => (None, None, None, e.to_string()),
    };
    Ok(to_json(&SurfaceView {
        solenoid: (s.solenoid.axis_xy, s.solenoid.radius),
        cages: s.cages.iter().map(|c| (c.center, c.radius)).collect(),
        wire: s.wire.as_ref().map(|w| w.polyline.clone()),
        worldlines: s
            .worldlines
            .iter()
            .map(|w| w.waypoints.iter().map(|p| p.position).collect())
            .collect(),
        ramp: (s.solenoid.ramp_start, s.solenoid.ramp_end),
        slices,
        magnetic_term: mag,
        electric_term: ele,
        total: tot,
        status,
        meets_b: overlap.meets_b(),
        meets_e: overlap.meets_e(),
    }))
}

#[derive(Serialize)]
struct CagePoint {
    delta_theta_over_pi: f64,
    cage_radius: f64,
    deviation: f64,
    ratio: f64,
    exact_phase: f64,
}

/// Deviation from the point-cage result as the cages grow, up to
/// `max_over_pi · π` of subtended angle.
pub fn finite_cage_scan_json(
    phi_i: f64,
    phi_f: f64,
    max_over_pi: f64,
    steps: usize,
) -> Result<String, String> {
    let params = GeometryParams::default();
    let d = params.cage_distance();
    let steps = steps.clamp(1, 100);
    let max = max_over_pi.clamp(1e-4, 0.3);
    let points = (1..=steps)
        .map(|k| {
            let dt = std::f64::consts::PI * max * k as f64 / steps as f64;
            let r = finite_cage_deviation(
                phi_i,
                phi_f,
                cage_radius_for_angle(d, dt),
                &params,
                DEMO_RES,
            )
            .map_err(|e| e.to_string())?;
            Ok(CagePoint {
                delta_theta_over_pi: r.delta_theta_over_pi,
                cage_radius: r.cage_radius,
                deviation: r.deviation,
                ratio: r.ratio,
                exact_phase: r.exact_phase,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(to_json(&points))
}

/// Whether every surface strategy meets a field for this layout.
pub fn obstruction_json(name: &str, phi_i: f64, phi_f: f64, turns: i32) -> Result<String, String> {
    let s = build_paper_scenario(kind(name)?, phi_i, phi_f, turns, &GeometryParams::default())
        .map_err(|e| e.to_string())?;
    let report = topology_report(&s, DEMO_RES).map_err(|e| e.to_string())?;
    Ok(to_json(&report))
}

#[wasm_bindgen]
pub fn phase_curve(
    kind: &str,
    phi_i: f64,
    phi_f_max: f64,
    steps: usize,
    turns: i32,
) -> Result<String, JsError> {
    phase_curve_json(kind, phi_i, phi_f_max, steps, turns).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn surface_slices(
    kind: &str,
    strategy: &str,
    phi_i: f64,
    phi_f: f64,
    turns: i32,
    n_slices: usize,
) -> Result<String, JsError> {
    surface_slices_json(kind, strategy, phi_i, phi_f, turns, n_slices).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn finite_cage_scan(
    phi_i: f64,
    phi_f: f64,
    max_over_pi: f64,
    steps: usize,
) -> Result<String, JsError> {
    finite_cage_scan_json(phi_i, phi_f, max_over_pi, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn obstruction(kind: &str, phi_i: f64, phi_f: f64, turns: i32) -> Result<String, JsError> {
    obstruction_json(kind, phi_i, phi_f, turns).map_err(|e| JsError::new(&e))
}
