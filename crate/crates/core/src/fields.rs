//! Solenoid potentials and fields in the quasi-static approximation, plus the
//! conductor shielding rules that fix the total electric field.
//!
//! Everything lives in the cross-sectional plane of an infinite solenoid. The
//! vector potential is taken in the Lorenz gauge, `A = Φ/(2πρ) φ̂` outside the
//! winding, so the induced field outside is `E_A = -∂A/∂t`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{point_segment_distance, Vec2};
use crate::scenario::Scenario;

/// Relative tolerance used when comparing conductor positions for symmetry.
const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("point at ρ = {rho} lies inside the solenoid (radius {radius})")]
    InteriorPoint { rho: f64, radius: f64 },
}

/// Interpolation of the flux between its initial and final values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RampShape {
    #[default]
    Linear,
    /// Cubic `3u² - 2u³`; the rate vanishes at both ends of the ramp.
    Smoothstep,
}

/// An ideal infinite solenoid seen in cross-section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolenoidModel {
    pub axis_xy: Vec2,
    pub radius: f64,
    pub flux_initial: f64,
    pub flux_final: f64,
    pub ramp_start: f64,
    pub ramp_end: f64,
    #[serde(default)]
    pub ramp_shape: RampShape,
}

impl SolenoidModel {
    /// Fraction of the ramp completed at `t`, clamped to [0, 1].
    fn ramp_progress(&self, t: f64) -> f64 {
        if t <= self.ramp_start {
            return 0.0;
        }
        if t >= self.ramp_end {
            return 1.0;
        }
        let u = (t - self.ramp_start) / (self.ramp_end - self.ramp_start);
        match self.ramp_shape {
            RampShape::Linear => u,
            RampShape::Smoothstep => u * u * (3.0 - 2.0 * u),
        }
    }

    /// Φ(t). Exactly `flux_initial` before the ramp and `flux_final` after it.
    pub fn flux_at(&self, t: f64) -> f64 {
        if t <= self.ramp_start {
            self.flux_initial
        } else if t >= self.ramp_end {
            self.flux_final
        } else {
            let s = self.ramp_progress(t);
            self.flux_initial + (self.flux_final - self.flux_initial) * s
        }
    }

    /// dΦ/dt; zero outside the open ramp window.
    pub fn flux_rate(&self, t: f64) -> f64 {
        if t <= self.ramp_start || t >= self.ramp_end || self.flux_initial == self.flux_final {
            return 0.0;
        }
        let span = self.ramp_end - self.ramp_start;
        let u = (t - self.ramp_start) / span;
        let jump = self.flux_final - self.flux_initial;
        match self.ramp_shape {
            RampShape::Linear => jump / span,
            RampShape::Smoothstep => jump * 6.0 * u * (1.0 - u) / span,
        }
    }

    pub fn is_ramping(&self, t: f64) -> bool {
        self.flux_rate(t) != 0.0
    }

    pub fn cross_section_area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn contains(&self, point: Vec2) -> bool {
        (point - self.axis_xy).norm() <= self.radius
    }

    /// Uniform out-of-plane field inside the winding, zero outside.
    pub fn magnetic_field(&self, point: Vec2, t: f64) -> f64 {
        if self.contains(point) {
            self.flux_at(t) / self.cross_section_area()
        } else {
            0.0
        }
    }

    /// `φ̂ / (2πρ)` at an exterior point: the spatial profile shared by `A`
    /// (times Φ) and `E_A` (times -dΦ/dt).
    pub fn azimuthal_profile(&self, point: Vec2) -> Result<Vec2, FieldError> {
        let rel = point - self.axis_xy;
        let rho_sq = rel.norm_sq();
        if rho_sq <= self.radius * self.radius {
            return Err(FieldError::InteriorPoint {
                rho: rho_sq.sqrt(),
                radius: self.radius,
            });
        }
        Ok(rel.perp() * (1.0 / (2.0 * PI * rho_sq)))
    }

    /// Lorenz-gauge vector potential outside the solenoid.
    pub fn vector_potential(&self, point: Vec2, t: f64) -> Result<Vec2, FieldError> {
        Ok(self.azimuthal_profile(point)? * self.flux_at(t))
    }

    /// Induced field `E_A = -∂A/∂t` outside the solenoid.
    pub fn induced_electric_field(&self, point: Vec2, t: f64) -> Result<Vec2, FieldError> {
        Ok(self.azimuthal_profile(point)? * -self.flux_rate(t))
    }

    /// `E_A` continued inside the winding, where the uniform changing field
    /// gives `-(dΦ/dt) ρ / (2π R²) φ̂`.
    pub fn induced_electric_field_anywhere(&self, point: Vec2, t: f64) -> Vec2 {
        let rate = self.flux_rate(t);
        if rate == 0.0 {
            return Vec2::ZERO;
        }
        let rel = point - self.axis_xy;
        if rel.norm() <= self.radius {
            rel.perp() * (-rate / (2.0 * PI * self.radius * self.radius))
        } else {
            rel.perp() * (-rate / (2.0 * PI * rel.norm_sq()))
        }
    }
}

/// Charge and reduced Planck constant. Defaults to natural units, in which
/// fluxes read directly as phases in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub charge: f64,
    pub hbar: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            charge: 1.0,
            hbar: 1.0,
        }
    }
}

impl PhysicalConstants {
    /// q/ħ, the prefactor turning flux into phase.
    pub fn coupling(&self) -> f64 {
        self.charge / self.hbar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    InsideSolenoid,
    InsideConductor,
    FreeSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub e_field: Vec2,
    pub b_field: f64,
    pub region: Region,
}

/// Which region of the plane a point belongs to.
pub fn classify(scenario: &Scenario, point: Vec2) -> Region {
    if scenario.solenoid.contains(point) {
        Region::InsideSolenoid
    } else if in_conductor(scenario, point) {
        Region::InsideConductor
    } else {
        Region::FreeSpace
    }
}

pub(crate) fn in_conductor(scenario: &Scenario, point: Vec2) -> bool {
    if scenario.cages.iter().any(|c| c.contains(point)) {
        return true;
    }
    match &scenario.wire {
        Some(wire) => {
            let tube = scenario.wire_tube_radius();
            wire.polyline
                .windows(2)
                .any(|w| point_segment_distance(point, w[0], w[1]) <= tube)
        }
        None => false,
    }
}

/// Total field at a spacetime point under the shielding rules.
///
/// Conductors carry exactly zero electric field. In free space the field is
/// `E_A`; the induced-charge field away from conductors is never synthesized
/// pointwise (see [`ev_line_integral_vanishes`]).
pub fn total_field_at(scenario: &Scenario, point: Vec2, t: f64) -> FieldSample {
    let region = classify(scenario, point);
    let solenoid = &scenario.solenoid;
    match region {
        Region::InsideConductor => FieldSample {
            e_field: Vec2::ZERO,
            b_field: 0.0,
            region,
        },
        Region::InsideSolenoid => FieldSample {
            e_field: solenoid.induced_electric_field_anywhere(point, t),
            b_field: solenoid.magnetic_field(point, t),
            region,
        },
        Region::FreeSpace => FieldSample {
            e_field: solenoid.induced_electric_field_anywhere(point, t),
            b_field: 0.0,
            region,
        },
    }
}

/// Whether the conductor layout maps onto itself under a half turn about the
/// solenoid axis (cage a ↔ cage b, wire onto its own reverse).
pub fn layout_is_half_turn_symmetric(scenario: &Scenario) -> bool {
    let axis = scenario.solenoid.axis_xy;
    let scale = scenario.length_scale();
    let tol = SYMMETRY_TOL * scale;
    let image = |p: Vec2| axis * 2.0 - p;

    let [a, b] = &scenario.cages;
    if image(a.center).distance(b.center) > tol || (a.radius - b.radius).abs() > tol {
        return false;
    }
    match &scenario.wire {
        None => true,
        Some(wire) => {
            let n = wire.polyline.len();
            (0..n).all(|i| image(wire.polyline[i]).distance(wire.polyline[n - 1 - i]) <= tol)
        }
    }
}

/// Whether the line integral of the induced-charge field `E_V` along `curve`
/// at time `t` is known to vanish, which licenses replacing the total field
/// by `E_A` in the line integral.
///
/// Holds when nothing is ramping at `t`, when the whole curve runs inside
/// conductors (then the total field is zero pointwise), or when the layout is
/// half-turn symmetric and the curve runs from one cage center to the other:
/// the potential of the induced charges is then symmetric, so it takes equal
/// values at the two endpoints.
pub fn ev_line_integral_vanishes(scenario: &Scenario, curve: &[Vec2], t: f64) -> bool {
    if curve.len() < 2 {
        return false;
    }
    if !scenario.solenoid.is_ramping(t) {
        return true;
    }
    if curve_inside_conductors(scenario, curve) {
        return true;
    }
    let tol = SYMMETRY_TOL * scenario.length_scale();
    let [a, b] = &scenario.cages;
    let first = curve[0];
    let last = curve[curve.len() - 1];
    layout_is_half_turn_symmetric(scenario)
        && first.distance(a.center) <= tol
        && last.distance(b.center) <= tol
}

/// Vertices and segment midpoints all lie in cages or the wire tube.
pub(crate) fn curve_inside_conductors(scenario: &Scenario, curve: &[Vec2]) -> bool {
    curve.iter().all(|&p| in_conductor(scenario, p))
        && curve
            .windows(2)
            .all(|w| in_conductor(scenario, crate::geometry::lerp(w[0], w[1], 0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{build_paper_scenario, GeometryParams, ScenarioKind};

    fn ramp(phi_i: f64, phi_f: f64, shape: RampShape) -> SolenoidModel {
        SolenoidModel {
            axis_xy: Vec2::ZERO,
            radius: 0.5,
            flux_initial: phi_i,
            flux_final: phi_f,
            ramp_start: 0.0,
            ramp_end: 1.0,
            ramp_shape: shape,
        }
    }

    #[test]
    fn constant_flux_everywhere() {
        let s = ramp(3.0, 3.0, RampShape::Linear);
        for t in [-1.0, 0.0, 0.3, 1.0, 7.0] {
            assert_eq!(s.flux_at(t), 3.0);
            assert_eq!(s.flux_rate(t), 0.0);
        }
    }

    #[test]
    fn linear_midpoint() {
        let s = ramp(0.0, 2.0, RampShape::Linear);
        assert_eq!(s.flux_at(0.5), 1.0);
    }

    #[test]
    fn smoothstep_endpoints() {
        let mut s = ramp(1.0, 5.0, RampShape::Smoothstep);
        s.ramp_start = 2.0;
        s.ramp_end = 3.5;
        assert_eq!(s.flux_at(2.0), 1.0);
        assert_eq!(s.flux_at(3.5), 5.0);
        assert_eq!(s.flux_rate(2.0), 0.0);
    }

    #[test]
    fn rate_matches_finite_difference() {
        for shape in [RampShape::Linear, RampShape::Smoothstep] {
            let s = ramp(-1.0, 4.0, shape);
            for &t in &[0.1, 0.37, 0.5, 0.81] {
                let h = 1e-6;
                let fd = (s.flux_at(t + h) - s.flux_at(t - h)) / (2.0 * h);
                assert!((fd - s.flux_rate(t)).abs() < 1e-6, "{shape:?} t={t}");
            }
        }
    }

    #[test]
    fn vector_potential_unit_case() {
        let mut s = ramp(2.0 * PI, 2.0 * PI, RampShape::Linear);
        s.radius = 0.5;
        let a = s.vector_potential(Vec2::new(1.0, 0.0), 0.0).unwrap();
        assert!((a.x).abs() < 1e-15 && (a.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vector_potential_rejects_interior() {
        let s = ramp(1.0, 1.0, RampShape::Linear);
        assert!(matches!(
            s.vector_potential(Vec2::new(0.1, 0.0), 0.0),
            Err(FieldError::InteriorPoint { .. })
        ));
    }

    #[test]
    fn zero_flux_potential_vanishes() {
        let s = ramp(0.0, 0.0, RampShape::Linear);
        assert_eq!(
            s.vector_potential(Vec2::new(3.0, -2.0), 0.4).unwrap(),
            Vec2::ZERO
        );
    }

    #[test]
    fn induced_field_direction() {
        let mut s = ramp(0.0, 2.0 * PI, RampShape::Linear);
        s.radius = 0.5;
        let e = s.induced_electric_field(Vec2::new(1.0, 0.0), 0.5).unwrap();
        // magnitude 1 along -φ̂ = -ŷ
        assert!(e.x.abs() < 1e-15 && (e.y + 1.0).abs() < 1e-15);
        assert_eq!(
            s.induced_electric_field(Vec2::new(1.0, 0.0), -0.1).unwrap(),
            Vec2::ZERO
        );
    }

    #[test]
    fn interior_field_is_continuous_at_winding() {
        let s = ramp(0.0, 3.0, RampShape::Linear);
        let inner = s.induced_electric_field_anywhere(Vec2::new(0.5 - 1e-12, 0.0), 0.5);
        let outer = s.induced_electric_field_anywhere(Vec2::new(0.5 + 1e-12, 0.0), 0.5);
        assert!((inner - outer).norm() < 1e-9);
    }

    #[test]
    fn shielding_inside_cage() {
        let sc = build_paper_scenario(ScenarioKind::Fig1, 1.0, 2.0, 0, &GeometryParams::default())
            .unwrap();
        let t = 0.5 * (sc.solenoid.ramp_start + sc.solenoid.ramp_end);
        let sample = total_field_at(&sc, sc.cages[0].center, t);
        assert_eq!(sample.region, Region::InsideConductor);
        assert_eq!(sample.e_field, Vec2::ZERO);
        let free = total_field_at(&sc, Vec2::new(0.0, 5.0), t);
        assert_eq!(free.region, Region::FreeSpace);
        assert!(free.e_field.norm() > 0.0);
        let late = total_field_at(&sc, Vec2::new(0.0, 5.0), sc.solenoid.ramp_end + 0.1);
        assert_eq!(late.e_field, Vec2::ZERO);
        assert_eq!(late.b_field, 0.0);
        let core = total_field_at(&sc, Vec2::new(0.1, 0.0), sc.solenoid.ramp_end);
        assert!((core.b_field * sc.solenoid.cross_section_area() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn ev_rule_examples() {
        let p = GeometryParams::default();
        let fig1 = build_paper_scenario(ScenarioKind::Fig1, 1.0, 2.0, 0, &p).unwrap();
        let t = 0.5 * (fig1.solenoid.ramp_start + fig1.solenoid.ramp_end);
        let diameter = vec![
            fig1.cages[0].center,
            fig1.solenoid.axis_xy,
            fig1.cages[1].center,
        ];
        assert!(ev_line_integral_vanishes(&fig1, &diameter, t));

        let fig2a = build_paper_scenario(ScenarioKind::Fig2a, 1.0, 2.0, 0, &p).unwrap();
        let wire = fig2a.wire.as_ref().unwrap().polyline.clone();
        assert!(ev_line_integral_vanishes(&fig2a, &wire, t));
        // same diameter is not licensed once the wire breaks the symmetry
        assert!(!ev_line_integral_vanishes(&fig2a, &diameter, t));

        let mut lopsided = fig1.clone();
        lopsided.cages[1].center = Vec2::new(-4.0, 7.0);
        let curve = vec![lopsided.cages[0].center, lopsided.cages[1].center];
        assert!(!ev_line_integral_vanishes(&lopsided, &curve, t));
    }
}
