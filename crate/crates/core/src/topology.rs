//! Winding numbers and field-overlap reports for connecting curves and
//! spacetime surfaces.
//!
//! "The field-free region is not simply connected" is certified only over the
//! implemented surface strategies: a scenario is reported as obstructed when
//! every strategy's surface meets a nonzero field somewhere.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::total_field_at;
use crate::geometry::{bbox_misses_disk, polygon_disk_signed_area, Vec2};
use crate::scenario::Scenario;
use crate::surface::{build_surface, Resolution, SpacetimeSurface, Strategy, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopologyError {
    #[error("curve vertex {index} coincides with the winding center")]
    VertexAtCenter { index: usize },
    #[error("curve segment {index} passes through the winding center")]
    SegmentThroughCenter { index: usize },
}

/// Accumulated signed angle of `curve` around `center`, divided by 2π.
///
/// Closed curves (the last vertex joined back to the first) give integers up
/// to rounding; open curves give arbitrary fractions, e.g. ±½ for a curve
/// that goes half way around.
pub fn winding_number(curve: &[Vec2], center: Vec2, closed: bool) -> Result<f64, TopologyError> {
    if let Some(index) = curve.iter().position(|&p| p == center) {
        return Err(TopologyError::VertexAtCenter { index });
    }
    let n = curve.len();
    let edges = if closed { n } else { n.saturating_sub(1) };
    let mut total = 0.0;
    for i in 0..edges {
        let u = curve[i] - center;
        let v = curve[(i + 1) % n] - center;
        let cross = u.cross(v);
        let dot = u.dot(v);
        if cross == 0.0 && dot < 0.0 {
            return Err(TopologyError::SegmentThroughCenter { index: i });
        }
        total += cross.atan2(dot);
    }
    Ok(total / (2.0 * PI))
}

/// A contiguous run of time cells over which the surface sweeps across the
/// solenoid cross-section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BCrossing {
    /// Area-weighted mean time of the run.
    pub time: f64,
    /// Swept signed area in units of the cross-section (1 = one full crossing).
    pub signed_count: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceOverlap {
    pub strategy: Strategy,
    pub b_crossings: Vec<BCrossing>,
    /// Σ |Φ(t)| · |swept fraction| over cells; zero iff the surface never
    /// meets a nonzero magnetic field.
    pub b_flux_overlap: f64,
    /// Spacetime measure (time × arclength) of slice points with nonzero
    /// total electric field. Conductor interiors never count.
    pub e_overlap_measure: f64,
}

impl SurfaceOverlap {
    pub fn meets_b(&self) -> bool {
        self.b_flux_overlap > 0.0
    }

    pub fn meets_e(&self) -> bool {
        self.e_overlap_measure > 0.0
    }

    pub fn meets_any(&self) -> bool {
        self.meets_b() || self.meets_e()
    }
}

const CROSSING_EPS: f64 = 1e-12;

pub fn surface_field_overlap(surface: &SpacetimeSurface, scenario: &Scenario) -> SurfaceOverlap {
    let sol = &scenario.solenoid;
    let disk_area = sol.cross_section_area();

    let mut crossings = Vec::new();
    let mut run: Option<(f64, f64, f64)> = None; // (Σ frac·t, Σ |frac|, Σ frac)
    let mut b_overlap = 0.0;
    for k in 0..surface.n_cells() {
        let t_mid = 0.5 * (surface.times[k] + surface.times[k + 1]);
        let frac = if bbox_misses_disk(&surface.curves[k], sol.axis_xy, sol.radius)
            && bbox_misses_disk(&surface.curves[k + 1], sol.axis_xy, sol.radius)
        {
            0.0
        } else {
            polygon_disk_signed_area(&surface.cell_polygon(k), sol.axis_xy, sol.radius) / disk_area
        };
        if frac.abs() > CROSSING_EPS {
            b_overlap += sol.flux_at(t_mid).abs() * frac.abs();
            let r = run.get_or_insert((0.0, 0.0, 0.0));
            r.0 += frac.abs() * t_mid;
            r.1 += frac.abs();
            r.2 += frac;
        } else if let Some((wt, w, s)) = run.take() {
            crossings.push(BCrossing {
                time: wt / w,
                signed_count: s,
            });
        }
    }
    if let Some((wt, w, s)) = run.take() {
        crossings.push(BCrossing {
            time: wt / w,
            signed_count: s,
        });
    }

    let (t0, t1) = (sol.ramp_start, sol.ramp_end);
    let mut e_measure = 0.0;
    if sol.flux_initial != sol.flux_final {
        // exposed arclength of the last distinct slice
        let mut cache: Option<(Vec<Vec2>, f64)> = None;
        for k in 0..surface.n_cells() {
            let (a, b) = (surface.times[k].max(t0), surface.times[k + 1].min(t1));
            if b <= a {
                continue;
            }
            let t_eval = 0.5 * (a + b);
            if !sol.is_ramping(t_eval) {
                continue;
            }
            let Ok(curve) = surface.family.curve_at(scenario, t_eval) else {
                continue;
            };
            let exposed = match &cache {
                Some((c, len)) if *c == curve => *len,
                _ => {
                    let len = exposed_length(scenario, &curve, t_eval);
                    cache = Some((curve, len));
                    len
                }
            };
            e_measure += (b - a) * exposed;
        }
    }

    SurfaceOverlap {
        strategy: surface.family.strategy,
        b_crossings: crossings,
        b_flux_overlap: b_overlap,
        e_overlap_measure: e_measure,
    }
}

/// Trapezoid-weighted arclength of the slice points carrying a nonzero
/// field. Whether a point is exposed does not change during the ramp.
fn exposed_length(scenario: &Scenario, curve: &[Vec2], t: f64) -> f64 {
    let n = curve.len();
    let mut len = 0.0;
    for j in 0..n {
        if total_field_at(scenario, curve[j], t).e_field == Vec2::ZERO {
            continue;
        }
        let left = if j > 0 {
            curve[j].distance(curve[j - 1])
        } else {
            0.0
        };
        let right = if j + 1 < n {
            curve[j].distance(curve[j + 1])
        } else {
            0.0
        };
        len += 0.5 * (left + right);
    }
    len
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    /// Open-curve winding of the wire around the solenoid axis.
    pub wire_winding: Option<f64>,
    pub surfaces: Vec<SurfaceOverlap>,
    pub strategies_checked: Vec<Strategy>,
    /// Every checked surface meets a nonzero field.
    pub deformation_obstructed: bool,
    /// Negation of the above, restricted to the checked strategies.
    pub simply_connected_complement: bool,
}

/// Strategies that make sense for this scenario's geometry.
pub fn candidate_strategies(scenario: &Scenario) -> Vec<Strategy> {
    let mut out = vec![
        Strategy::LeftOfSolenoid,
        Strategy::RightOfSolenoid,
        Strategy::Straight,
    ];
    if scenario.wire.is_some() {
        out.push(Strategy::ThroughWire);
    }
    out
}

pub fn topology_report(
    scenario: &Scenario,
    resolution: Resolution,
) -> Result<TopologyReport, SurfaceError> {
    let strategies = candidate_strategies(scenario);
    let mut surfaces = Vec::with_capacity(strategies.len());
    for &strategy in &strategies {
        let surface = build_surface(scenario, strategy, resolution)?;
        surfaces.push(surface_field_overlap(&surface, scenario));
    }
    let wire_winding = match &scenario.wire {
        Some(w) => winding_number(&w.polyline, scenario.solenoid.axis_xy, false).ok(),
        None => None,
    };
    let obstructed = surfaces.iter().all(SurfaceOverlap::meets_any);
    Ok(TopologyReport {
        wire_winding,
        surfaces,
        strategies_checked: strategies,
        deformation_obstructed: obstructed,
        simply_connected_complement: !obstructed,
    })
}

/// True iff no implemented strategy deforms one worldline into the other
/// without meeting a nonzero field.
pub fn deformation_obstruction(scenario: &Scenario) -> Result<bool, SurfaceError> {
    Ok(topology_report(scenario, Resolution::default())?.deformation_obstructed)
}
