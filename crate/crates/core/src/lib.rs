//! Aharonov-Bohm phases for interferometers whose solenoid flux changes while
//! the wavepackets wait inside Faraday cages.
//!
//! Two independent routes compute the phase difference `φ_a - φ_b`:
//!
//! * [`surface::phase_eq1`] integrates the magnetic flux and the induced
//!   electric field over a spacetime surface spanning the two worldlines.
//! * [`potential::phase_eq3`] integrates the potentials along each worldline.
//!
//! Units are natural (`q = ħ = 1` by default), so fluxes read as phases.

pub mod fields;
pub mod geometry;
pub mod potential;
pub mod run;
pub mod scenario;
pub mod surface;
pub mod topology;

pub use fields::{PhysicalConstants, RampShape, SolenoidModel};
pub use geometry::Vec2;
pub use potential::{
    closed_form_phase, finite_cage_deviation, phase_eq3, FiniteCageReport, PathPhaseBreakdown,
};
pub use scenario::{
    build_finite_cage_scenario, build_paper_scenario, validate, GeometryParams, Scenario,
    ScenarioKind, Violation,
};
pub use surface::{phase_eq1, CageModel, Method, PhaseResult, Resolution, Strategy};
pub use topology::{deformation_obstruction, topology_report, winding_number, TopologyReport};
