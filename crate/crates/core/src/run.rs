//! Configuration, evaluation and rendering behind the command-line verbs.
//!
//! Every numeric path here is deterministic: sweeps may evaluate points in
//! parallel but rows come back in input order, and numbers are printed with
//! the shortest round-trip representation.

use std::fmt::{self, Write as _};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{PhysicalConstants, RampShape, SolenoidModel};
use crate::geometry::Vec2;
use crate::potential::{
    closed_form_phase, finite_cage_deviation, phase_eq3, PathPhaseBreakdown, PotentialError,
};
use crate::scenario::{
    build_paper_scenario, validate, FaradayCage, GeometryParams, PathLabel, Scenario,
    ScenarioError, ScenarioKind, Violation, Waypoint, WirePath, Worldline,
};
use crate::surface::{phase_eq1, PhaseResult, Resolution, Strategy, SurfaceError};
use crate::topology::{topology_report, TopologyReport};

/// Smallest accepted `n_time` / `n_curve`.
pub const MIN_RESOLUTION: usize = 16;
/// Quadrature error above which a run is refined.
pub const QUAD_TOL: f64 = 1e-6;
/// Refinement stops once `n_time` would exceed this.
pub const MAX_N_TIME: usize = 16384;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("scenario failed validation")]
    Invalid(Vec<Violation>),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl RunError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Invalid(_) => 1,
            RunError::Parse(_) | RunError::Config(_) => 2,
            RunError::Numerical(_) => 3,
        }
    }
}

impl From<ScenarioError> for RunError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Invalid(v) => RunError::Invalid(v),
            ScenarioError::MissingTurns(_) | ScenarioError::NoBuilder(_) => {
                RunError::Config(e.to_string())
            }
            other => RunError::Numerical(other.to_string()),
        }
    }
}

/// One way of computing the phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodSpec {
    Eq1(Strategy),
    Eq3,
    ClosedForm,
}

impl MethodSpec {
    pub const ALL: [MethodSpec; 6] = [
        MethodSpec::Eq1(Strategy::LeftOfSolenoid),
        MethodSpec::Eq1(Strategy::RightOfSolenoid),
        MethodSpec::Eq1(Strategy::Straight),
        MethodSpec::Eq1(Strategy::ThroughWire),
        MethodSpec::Eq3,
        MethodSpec::ClosedForm,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "eq3" => Some(MethodSpec::Eq3),
            "closed_form" => Some(MethodSpec::ClosedForm),
            other => other
                .strip_prefix("eq1:")
                .and_then(Strategy::parse)
                .map(MethodSpec::Eq1),
        }
    }

    /// Comma-separated list, order kept, duplicates dropped.
    pub fn parse_list(s: &str) -> Result<Vec<Self>, RunError> {
        let mut out = Vec::new();
        for item in s.split(',').filter(|x| !x.trim().is_empty()) {
            let m = MethodSpec::parse(item)
                .ok_or_else(|| RunError::Config(format!("unknown method '{}'", item.trim())))?;
            if !out.contains(&m) {
                out.push(m);
            }
        }
        if out.is_empty() {
            return Err(RunError::Config("at least one method is required".into()));
        }
        Ok(out)
    }

    pub fn name(self) -> String {
        match self {
            MethodSpec::Eq1(s) => format!("eq1:{}", s.as_str()),
            MethodSpec::Eq3 => "eq3".into(),
            MethodSpec::ClosedForm => "closed_form".into(),
        }
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    HumanTable,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "human_table" | "table" | "human" => Some(Self::HumanTable),
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            _ => None,
        }
    }
}

/// Where the scenario comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSource {
    BuiltIn {
        kind: ScenarioKind,
        flux_initial: f64,
        flux_final: f64,
        turns: i32,
        params: GeometryParams,
    },
    File {
        scenario: Scenario,
        /// Flux overrides applied on top of the file.
        flux_initial: Option<f64>,
        flux_final: Option<f64>,
    },
}

impl ScenarioSource {
    pub fn build(&self) -> Result<Scenario, RunError> {
        match self {
            ScenarioSource::BuiltIn {
                kind,
                flux_initial,
                flux_final,
                turns,
                params,
            } => Ok(build_paper_scenario(
                *kind,
                *flux_initial,
                *flux_final,
                *turns,
                params,
            )?),
            ScenarioSource::File {
                scenario,
                flux_initial,
                flux_final,
            } => {
                let mut s = scenario.clone();
                if let Some(v) = flux_initial {
                    s.solenoid.flux_initial = *v;
                }
                if let Some(v) = flux_final {
                    s.solenoid.flux_final = *v;
                }
                let violations = validate(&s);
                if violations.is_empty() {
                    Ok(s)
                } else {
                    Err(RunError::Invalid(violations))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: ScenarioSource,
    pub methods: Vec<MethodSpec>,
    pub resolution: Resolution,
    pub format: OutputFormat,
    /// Double the resolution while the error estimate exceeds [`QUAD_TOL`].
    pub refine: bool,
}

impl RunConfig {
    pub fn check(&self) -> Result<(), RunError> {
        if self.methods.is_empty() {
            return Err(RunError::Config("at least one method is required".into()));
        }
        let r = self.resolution;
        if r.n_time < MIN_RESOLUTION || r.n_curve < MIN_RESOLUTION {
            return Err(RunError::Config(format!(
                "resolution must be at least {MIN_RESOLUTION} (got n_time={}, n_curve={})",
                r.n_time, r.n_curve
            )));
        }
        Ok(())
    }
}

/// Closed set of reasons for a skipped row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SkipReason {
    /// `eq1:through_wire` on a scenario without a wire.
    NoWire,
    /// A connecting curve leaves the conductors where the induced-charge field is not modelled.
    EvUnmodeled,
    /// Custom scenario: no closed form.
    NoClosedForm,
    /// No conductor path fixes the scalar potential difference between the cages.
    PotentialPathUndefined,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::NoWire => "NO_WIRE",
            SkipReason::EvUnmodeled => "EV_UNMODELED",
            SkipReason::NoClosedForm => "NO_CLOSED_FORM",
            SkipReason::PotentialPathUndefined => "POTENTIAL_PATH_UNDEFINED",
        }
    }
}

/// One output row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub scenario_kind: ScenarioKind,
    pub method: String,
    pub phi_i: f64,
    pub phi_f: f64,
    pub n_turns: f64,
    pub magnetic_term: Option<f64>,
    pub electric_term: Option<f64>,
    pub total: Option<f64>,
    pub closed_form: Option<f64>,
    pub abs_err: Option<f64>,
    pub quad_err: Option<f64>,
    /// `ok` or `SKIPPED:<REASON>`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<PathPhaseBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Resolution>,
}

impl ResultRow {
    fn blank(scenario: &Scenario, method: String) -> Self {
        let closed = closed_form_of(scenario);
        ResultRow {
            scenario_kind: scenario.kind,
            method,
            phi_i: scenario.solenoid.flux_initial,
            phi_f: scenario.solenoid.flux_final,
            n_turns: scenario.wire_turns(),
            magnetic_term: None,
            electric_term: None,
            total: None,
            closed_form: closed,
            abs_err: None,
            quad_err: None,
            status: "ok".into(),
            breakdown: None,
            resolution: None,
        }
    }

    fn skipped(scenario: &Scenario, method: String, reason: SkipReason) -> Self {
        ResultRow {
            status: format!("SKIPPED:{}", reason.as_str()),
            ..Self::blank(scenario, method)
        }
    }

    fn from_phase(
        scenario: &Scenario,
        method: String,
        r: &PhaseResult,
        res: Option<Resolution>,
    ) -> Self {
        let mut row = Self::blank(scenario, method);
        // `+ 0.0` folds negative zero
        row.magnetic_term = Some(r.magnetic_term + 0.0);
        row.electric_term = Some(r.electric_term + 0.0);
        row.total = Some(r.total + 0.0);
        row.abs_err = row.closed_form.map(|c| (r.total - c).abs());
        row.quad_err = Some(r.quadrature.error_estimate);
        row.breakdown = r.breakdown;
        row.resolution = res;
        row
    }

    pub fn is_skipped(&self) -> bool {
        self.status != "ok"
    }
}

fn closed_form_of(scenario: &Scenario) -> Option<f64> {
    closed_form_phase(
        scenario.kind,
        scenario.solenoid.flux_initial,
        scenario.solenoid.flux_final,
        scenario.wire_turns(),
        &scenario.constants,
    )
}

fn eval_eq1(
    scenario: &Scenario,
    strategy: Strategy,
    start: Resolution,
    refine: bool,
) -> Result<ResultRow, RunError> {
    let name = MethodSpec::Eq1(strategy).name();
    let mut res = start;
    loop {
        let r = match phase_eq1(scenario, strategy, res) {
            Ok(r) => r,
            Err(SurfaceError::NoWire) => {
                return Ok(ResultRow::skipped(scenario, name, SkipReason::NoWire))
            }
            Err(SurfaceError::EvUnmodeled { .. }) => {
                return Ok(ResultRow::skipped(scenario, name, SkipReason::EvUnmodeled))
            }
            Err(e) => return Err(RunError::Numerical(e.to_string())),
        };
        if !refine || r.quadrature.error_estimate <= QUAD_TOL {
            return Ok(ResultRow::from_phase(scenario, name, &r, Some(res)));
        }
        if res.n_time * 2 > MAX_N_TIME {
            return Err(RunError::Numerical(format!(
                "{name} did not converge: error estimate {} at n_time={}",
                r.quadrature.error_estimate, res.n_time
            )));
        }
        res = Resolution::new(res.n_time * 2, res.n_curve * 2);
    }
}

fn eval_eq3(scenario: &Scenario, refine: bool) -> Result<ResultRow, RunError> {
    let name = MethodSpec::Eq3.name();
    match phase_eq3(scenario) {
        Ok(r) if refine && r.quadrature.error_estimate > QUAD_TOL => {
            Err(RunError::Numerical(format!(
                "eq3 did not converge: error estimate {}",
                r.quadrature.error_estimate
            )))
        }
        Ok(r) => Ok(ResultRow::from_phase(scenario, name, &r, None)),
        Err(PotentialError::PotentialPathUndefined) => Ok(ResultRow::skipped(
            scenario,
            name,
            SkipReason::PotentialPathUndefined,
        )),
        Err(e) => Err(RunError::Numerical(e.to_string())),
    }
}

/// Evaluates one method on a validated scenario.
pub fn evaluate(
    scenario: &Scenario,
    method: MethodSpec,
    resolution: Resolution,
    refine: bool,
) -> Result<ResultRow, RunError> {
    match method {
        MethodSpec::Eq1(strategy) => eval_eq1(scenario, strategy, resolution, refine),
        MethodSpec::Eq3 => eval_eq3(scenario, refine),
        MethodSpec::ClosedForm => {
            let name = method.name();
            match closed_form_of(scenario) {
                Some(c) => {
                    let mut row = ResultRow::blank(scenario, name);
                    row.total = Some(c);
                    row.abs_err = Some(0.0);
                    row.quad_err = Some(0.0);
                    Ok(row)
                }
                None => Ok(ResultRow::skipped(scenario, name, SkipReason::NoClosedForm)),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub rows: Vec<ResultRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyReport>,
}

/// Evaluates every configured method; the topology report is included on request.
pub fn cmd_run(config: &RunConfig, with_topology: bool) -> Result<RunReport, RunError> {
    config.check()?;
    let scenario = config.source.build()?;
    let rows = config
        .methods
        .iter()
        .map(|&m| evaluate(&scenario, m, config.resolution, config.refine))
        .collect::<Result<Vec<_>, _>>()?;
    let topology = if with_topology {
        Some(
            topology_report(&scenario, config.resolution)
                .map_err(|e| RunError::Numerical(e.to_string()))?,
        )
    } else {
        None
    };
    Ok(RunReport { rows, topology })
}

/// Validation entry point: Ok with the violation list (empty means valid).
pub fn cmd_validate(source: &ScenarioSource) -> Result<Vec<Violation>, RunError> {
    match source.build() {
        Ok(_) => Ok(Vec::new()),
        Err(RunError::Invalid(v)) => Ok(v),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    FluxInitial,
    FluxFinal,
    Turns,
    CageRadius,
    NTime,
}

impl SweepParam {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "flux_initial" | "phi_i" => Some(Self::FluxInitial),
            "flux_final" | "phi_f" => Some(Self::FluxFinal),
            "N" | "n" | "turns" => Some(Self::Turns),
            "cage_radius" => Some(Self::CageRadius),
            "n_time" => Some(Self::NTime),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::FluxInitial => "flux_initial",
            Self::FluxFinal => "flux_final",
            Self::Turns => "N",
            Self::CageRadius => "cage_radius",
            Self::NTime => "n_time",
        }
    }
}

/// Parses a comma-separated list of numbers.
pub fn parse_values(s: &str) -> Result<Vec<f64>, RunError> {
    let values = s
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| RunError::Parse(format!("bad sweep value '{}'", x.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(RunError::Config("sweep needs at least one value".into()));
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub param: &'static str,
    pub value: f64,
    #[serde(flatten)]
    pub row: ResultRow,
}

fn sweep_point(
    config: &RunConfig,
    param: SweepParam,
    value: f64,
) -> Result<Vec<ResultRow>, RunError> {
    let mut source = config.source.clone();
    let mut resolution = config.resolution;
    let mut refine = config.refine;
    let mut finite_cage = None;
    match (&mut source, param) {
        (ScenarioSource::BuiltIn { flux_initial, .. }, SweepParam::FluxInitial) => {
            *flux_initial = value
        }
        (ScenarioSource::BuiltIn { flux_final, .. }, SweepParam::FluxFinal) => *flux_final = value,
        (ScenarioSource::File { flux_initial, .. }, SweepParam::FluxInitial) => {
            *flux_initial = Some(value)
        }
        (ScenarioSource::File { flux_final, .. }, SweepParam::FluxFinal) => {
            *flux_final = Some(value)
        }
        (ScenarioSource::BuiltIn { kind, turns, .. }, SweepParam::Turns) => {
            if *kind != ScenarioKind::Fig3 {
                return Err(RunError::Config(format!("N does not apply to {kind}")));
            }
            if value.fract() != 0.0 || value == 0.0 {
                return Err(RunError::Config(format!(
                    "N must be a nonzero integer, got {value}"
                )));
            }
            *turns = value as i32;
        }
        (
            ScenarioSource::BuiltIn {
                kind,
                flux_initial,
                flux_final,
                params,
                ..
            },
            SweepParam::CageRadius,
        ) => {
            if !(value > 0.0) {
                return Err(RunError::Config(format!(
                    "cage radius must be positive, got {value}"
                )));
            }
            params.cage_radius = Some(value);
            if *kind == ScenarioKind::Fig1 {
                finite_cage = Some((*flux_initial, *flux_final, params.clone()));
            }
        }
        (_, SweepParam::NTime) => {
            if value.fract() != 0.0 || value < MIN_RESOLUTION as f64 {
                return Err(RunError::Config(format!(
                    "n_time must be an integer >= {MIN_RESOLUTION}, got {value}"
                )));
            }
            resolution.n_time = value as usize;
            refine = false;
        }
        (ScenarioSource::File { .. }, p) => {
            return Err(RunError::Config(format!(
                "{} cannot be swept on a scenario file",
                p.as_str()
            )))
        }
    }
    let point = RunConfig {
        source,
        resolution,
        refine,
        ..config.clone()
    };
    let scenario = point.source.build()?;
    let mut rows = point
        .methods
        .iter()
        .map(|&m| evaluate(&scenario, m, resolution, refine))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((fi, ff, params)) = finite_cage {
        let rep = finite_cage_deviation(fi, ff, value, &params, resolution)
            .map_err(|e| RunError::Numerical(e.to_string()))?;
        let mut row = ResultRow::blank(&scenario, "finite_cage".into());
        row.total = Some(rep.phase);
        row.closed_form = Some(rep.closed_form);
        row.abs_err = Some(rep.deviation.abs());
        row.resolution = Some(resolution);
        rows.push(row);
    }
    Ok(rows)
}

/// Long-format sweep: one row per (value, method), in input order.
pub fn cmd_sweep(
    config: &RunConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<SweepRow>, RunError> {
    config.check()?;
    #[cfg(feature = "parallel")]
    let points: Vec<_> = values
        .par_iter()
        .map(|&v| sweep_point(config, param, v))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let points: Vec<_> = values
        .iter()
        .map(|&v| sweep_point(config, param, v))
        .collect();
    let mut out = Vec::new();
    for (&value, rows) in values.iter().zip(points) {
        for row in rows? {
            out.push(SweepRow {
                param: param.as_str(),
                value,
                row,
            });
        }
    }
    Ok(out)
}

pub const CSV_COLUMNS: [&str; 12] = [
    "scenario_kind",
    "method",
    "phi_i",
    "phi_f",
    "n_turns",
    "magnetic_term",
    "electric_term",
    "total",
    "closed_form",
    "abs_err",
    "quad_err",
    "status",
];

fn num(v: f64) -> String {
    format!("{v}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn csv_fields(row: &ResultRow) -> Vec<String> {
    vec![
        row.scenario_kind.as_str().to_string(),
        row.method.clone(),
        num(row.phi_i),
        num(row.phi_f),
        num(row.n_turns),
        opt(row.magnetic_term),
        opt(row.electric_term),
        opt(row.total),
        opt(row.closed_form),
        opt(row.abs_err),
        opt(row.quad_err),
        row.status.clone(),
    ]
}

fn write_csv(header: Vec<&str>, records: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn render_run_csv(rows: &[ResultRow]) -> String {
    write_csv(CSV_COLUMNS.to_vec(), rows.iter().map(csv_fields))
}

pub fn render_sweep_csv(rows: &[SweepRow]) -> String {
    let mut header = vec!["param", "value"];
    header.extend(CSV_COLUMNS);
    write_csv(
        header,
        rows.iter().map(|r| {
            let mut f = vec![r.param.to_string(), num(r.value)];
            f.extend(csv_fields(&r.row));
            f
        }),
    )
}

pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn table_cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.9}")).unwrap_or_else(|| "-".into())
}

fn table_err(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "-".into())
}

fn render_table(prefix: &[String], rows: &[&ResultRow], prefix_header: &[&str]) -> String {
    let mut out = String::new();
    for h in prefix_header {
        let _ = write!(out, "{h:>12} ");
    }
    let _ = writeln!(
        out,
        "{:<18} {:>16} {:>16} {:>16} {:>16} {:>9} {:>9}  status",
        "method", "magnetic", "electric", "total", "closed_form", "abs_err", "quad_err"
    );
    for (i, r) in rows.iter().enumerate() {
        if !prefix.is_empty() {
            let _ = write!(out, "{} ", prefix[i]);
        }
        let _ = writeln!(
            out,
            "{:<18} {:>16} {:>16} {:>16} {:>16} {:>9} {:>9}  {}",
            r.method,
            table_cell(r.magnetic_term),
            table_cell(r.electric_term),
            table_cell(r.total),
            table_cell(r.closed_form),
            table_err(r.abs_err),
            table_err(r.quad_err),
            r.status
        );
    }
    out
}

pub fn render_run_table(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(first) = report.rows.first() {
        let _ = writeln!(
            out,
            "scenario {}  phi_i = {}  phi_f = {}  turns = {}",
            first.scenario_kind, first.phi_i, first.phi_f, first.n_turns
        );
    }
    let rows: Vec<&ResultRow> = report.rows.iter().collect();
    out.push_str(&render_table(&[], &rows, &[]));
    out
}

pub fn render_sweep_table(rows: &[SweepRow]) -> String {
    let prefix: Vec<String> = rows
        .iter()
        .map(|r| format!("{:>12}", format!("{:.6}", r.value)))
        .collect();
    let inner: Vec<&ResultRow> = rows.iter().map(|r| &r.row).collect();
    let header = rows.first().map_or("value", |r| r.param);
    render_table(&prefix, &inner, &[header])
}

// ---------------------------------------------------------------------------
// Scenario files

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolenoidSection {
    axis_xy: [f64; 2],
    radius: f64,
    flux_initial: f64,
    flux_final: f64,
    ramp_start: f64,
    ramp_end: f64,
    #[serde(default)]
    ramp_shape: RampShape,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CageSection {
    center: [f64; 2],
    radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CagesSection {
    a: CageSection,
    b: CageSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireSection {
    polyline: Vec<[f64; 2]>,
    turns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WaypointEntry {
    time: f64,
    position: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldlineSection {
    waypoints: Vec<WaypointEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorldlinesSection {
    path_a: WorldlineSection,
    path_b: WorldlineSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default)]
    kind_hint: ScenarioKind,
    solenoid: SolenoidSection,
    cages: CagesSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    wire: Option<WireSection>,
    worldlines: WorldlinesSection,
    #[serde(default = "PhysicalConstants::default")]
    constants: PhysicalConstants,
}

fn worldline_from(label: PathLabel, section: WorldlineSection) -> Worldline {
    Worldline {
        label,
        waypoints: section
            .waypoints
            .into_iter()
            .map(|w| Waypoint::new(w.time, w.position.into()))
            .collect(),
    }
}

fn worldline_to(w: &Worldline) -> WorldlineSection {
    WorldlineSection {
        waypoints: w
            .waypoints
            .iter()
            .map(|wp| WaypointEntry {
                time: wp.time,
                position: wp.position.into(),
            })
            .collect(),
    }
}

/// Parses a scenario document. Structure only; physics checks are left to
/// [`validate`].
pub fn parse_scenario_toml(text: &str) -> Result<Scenario, RunError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| RunError::Parse(e.to_string()))?;
    let cage = |c: CageSection| FaradayCage {
        center: c.center.into(),
        radius: c.radius,
    };
    let sol = file.solenoid;
    Ok(Scenario {
        solenoid: SolenoidModel {
            axis_xy: sol.axis_xy.into(),
            radius: sol.radius,
            flux_initial: sol.flux_initial,
            flux_final: sol.flux_final,
            ramp_start: sol.ramp_start,
            ramp_end: sol.ramp_end,
            ramp_shape: sol.ramp_shape,
        },
        cages: [cage(file.cages.a), cage(file.cages.b)],
        wire: file.wire.map(|w| WirePath {
            polyline: w.polyline.into_iter().map(Vec2::from).collect(),
            turns: w.turns,
        }),
        worldlines: [
            worldline_from(PathLabel::PathA, file.worldlines.path_a),
            worldline_from(PathLabel::PathB, file.worldlines.path_b),
        ],
        constants: file.constants,
        kind: file.kind_hint,
    })
}

/// Writes a scenario in the document format read by [`parse_scenario_toml`].
pub fn scenario_to_toml(scenario: &Scenario) -> String {
    let sol = &scenario.solenoid;
    let cage = |c: &FaradayCage| CageSection {
        center: c.center.into(),
        radius: c.radius,
    };
    let file = ScenarioFile {
        kind_hint: scenario.kind,
        solenoid: SolenoidSection {
            axis_xy: sol.axis_xy.into(),
            radius: sol.radius,
            flux_initial: sol.flux_initial,
            flux_final: sol.flux_final,
            ramp_start: sol.ramp_start,
            ramp_end: sol.ramp_end,
            ramp_shape: sol.ramp_shape,
        },
        cages: CagesSection {
            a: cage(&scenario.cages[0]),
            b: cage(&scenario.cages[1]),
        },
        wire: scenario.wire.as_ref().map(|w| WireSection {
            polyline: w.polyline.iter().map(|&p| p.into()).collect(),
            turns: w.turns,
        }),
        worldlines: WorldlinesSection {
            path_a: worldline_to(&scenario.worldlines[0]),
            path_b: worldline_to(&scenario.worldlines[1]),
        },
        constants: scenario.constants,
    };
    toml::to_string(&file).expect("scenario documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn builtin(kind: ScenarioKind, fi: f64, ff: f64, turns: i32) -> ScenarioSource {
        ScenarioSource::BuiltIn {
            kind,
            flux_initial: fi,
            flux_final: ff,
            turns,
            params: GeometryParams::default(),
        }
    }

    fn config(source: ScenarioSource, methods: &str) -> RunConfig {
        RunConfig {
            source,
            methods: MethodSpec::parse_list(methods).unwrap(),
            resolution: Resolution::new(128, 32),
            format: OutputFormat::Csv,
            refine: true,
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in MethodSpec::ALL {
            assert_eq!(MethodSpec::parse(&m.name()), Some(m));
        }
        assert!(MethodSpec::parse_list("eq1:sideways").is_err());
        assert!(MethodSpec::parse_list(" , ").is_err());
    }

    #[test]
    fn fig1_four_rows() {
        let cfg = config(
            builtin(ScenarioKind::Fig1, 2.0 * PI, 4.0 * PI, 0),
            "eq1:left,eq1:right,eq3,closed_form",
        );
        let rep = cmd_run(&cfg, false).unwrap();
        assert_eq!(rep.rows.len(), 4);
        for r in &rep.rows {
            assert!((r.total.unwrap() - 3.0 * PI).abs() < 1e-6, "{r:?}");
        }
    }

    #[test]
    fn skipped_rows_carry_reasons() {
        let cfg = config(builtin(ScenarioKind::Fig1, 0.0, 1.0, 0), "eq1:through_wire");
        let rep = cmd_run(&cfg, false).unwrap();
        assert_eq!(rep.rows[0].status, "SKIPPED:NO_WIRE");
        let cfg = config(builtin(ScenarioKind::Fig2a, 0.0, 1.0, 0), "eq1:left");
        assert_eq!(
            cmd_run(&cfg, false).unwrap().rows[0].status,
            "SKIPPED:EV_UNMODELED"
        );
    }

    #[test]
    fn low_resolution_is_config_error() {
        let mut cfg = config(builtin(ScenarioKind::Fig1, 0.0, 1.0, 0), "eq3");
        cfg.resolution = Resolution::new(8, 32);
        assert_eq!(cmd_run(&cfg, false).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn sweep_keeps_order_and_columns() {
        let cfg = config(
            builtin(ScenarioKind::Fig2a, 1.0, 0.0, 0),
            "eq1:through_wire,eq3",
        );
        let values = [3.0, -1.0, 0.5];
        let rows = cmd_sweep(&cfg, SweepParam::FluxFinal, &values).unwrap();
        assert_eq!(rows.len(), 6);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.value, values[i / 2]);
            assert!((r.row.total.unwrap() - 1.0).abs() < 1e-9);
        }
        let csv = render_sweep_csv(&rows);
        assert!(csv.starts_with("param,value,scenario_kind,method,phi_i,phi_f,n_turns,"));
    }

    #[test]
    fn turns_sweep_only_for_external_layout() {
        let cfg = config(builtin(ScenarioKind::Fig1, 1.0, 0.0, 0), "eq3");
        assert_eq!(
            cmd_sweep(&cfg, SweepParam::Turns, &[1.0])
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn toml_round_trip() {
        for kind in ScenarioKind::CANONICAL {
            let s = build_paper_scenario(kind, 0.5, 1.5, 2, &GeometryParams::default()).unwrap();
            let text = scenario_to_toml(&s);
            assert_eq!(parse_scenario_toml(&text).unwrap(), s, "{kind}");
        }
    }

    #[test]
    fn toml_errors_have_context() {
        let err = parse_scenario_toml("[solenoid]\nradius = \"one\"\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("line"), "{err}");
    }
}
