use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use abphase::run::{
    cmd_run, cmd_sweep, cmd_validate, parse_scenario_toml, parse_values, render_json,
    render_run_csv, render_run_table, render_sweep_csv, render_sweep_table, MethodSpec,
    OutputFormat, RunConfig, RunError, ScenarioSource, SweepParam,
};
use abphase::{GeometryParams, Resolution, ScenarioKind};
use clap::{Args, Parser, Subcommand};

const DEFAULT_METHODS: &str = "eq1:left,eq1:right,eq1:straight,eq1:through_wire,eq3,closed_form";

#[derive(Parser)]
#[command(
    name = "abphase",
    version,
    about = "Aharonov-Bohm phases for time-varying solenoid interferometers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario; prints one violation per line.
    Validate(Common),
    /// Evaluate every selected method once.
    Run(Common),
    /// Evaluate the methods over a list of parameter values.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// flux_initial, flux_final, N, cage_radius or n_time.
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
}

#[derive(Args)]
struct Common {
    /// Built-in kind (fig1, fig2a, fig2c, fig3) or path to a scenario file.
    #[arg(long, default_value = "fig1")]
    scenario: String,
    /// Initial flux (overrides the file when given).
    #[arg(long, allow_hyphen_values = true)]
    phi_i: Option<f64>,
    /// Final flux (overrides the file when given).
    #[arg(long, allow_hyphen_values = true)]
    phi_f: Option<f64>,
    /// Wire turns for fig3; the sign picks the winding direction.
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    turns: i32,
    #[arg(long, default_value = DEFAULT_METHODS)]
    methods: String,
    #[arg(long, default_value_t = 2048)]
    n_time: usize,
    #[arg(long, default_value_t = 512)]
    n_curve: usize,
    /// human_table, csv or json.
    #[arg(long, default_value = "human_table")]
    format: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn source(&self) -> Result<ScenarioSource, RunError> {
        match ScenarioKind::parse(&self.scenario) {
            Some(ScenarioKind::Custom) => Err(RunError::Config(
                "custom scenarios must come from a file".into(),
            )),
            Some(kind) => Ok(ScenarioSource::BuiltIn {
                kind,
                flux_initial: self.phi_i.unwrap_or(0.0),
                flux_final: self.phi_f.unwrap_or(2.0 * PI),
                turns: self.turns,
                params: GeometryParams::default(),
            }),
            None => {
                let text = std::fs::read_to_string(&self.scenario)
                    .map_err(|e| RunError::Parse(format!("{}: {e}", self.scenario)))?;
                let scenario = parse_scenario_toml(&text)
                    .map_err(|e| RunError::Parse(format!("{}: {e}", self.scenario)))?;
                Ok(ScenarioSource::File {
                    scenario,
                    flux_initial: self.phi_i,
                    flux_final: self.phi_f,
                })
            }
        }
    }

    fn config(&self) -> Result<RunConfig, RunError> {
        let format = OutputFormat::parse(&self.format)
            .ok_or_else(|| RunError::Config(format!("unknown format '{}'", self.format)))?;
        Ok(RunConfig {
            source: self.source()?,
            methods: MethodSpec::parse_list(&self.methods)?,
            resolution: Resolution::new(self.n_time, self.n_curve),
            format,
            refine: true,
        })
    }

    fn emit(&self, text: &str) -> Result<(), RunError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| RunError::Config(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn execute(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Validate(common) => {
            let violations = cmd_validate(&common.source()?)?;
            let text: String = violations.iter().map(|v| format!("{v}\n")).collect();
            common.emit(&text)?;
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Run(common) => {
            let cfg = common.config()?;
            let report = cmd_run(&cfg, cfg.format == OutputFormat::Json)?;
            let text = match cfg.format {
                OutputFormat::Csv => render_run_csv(&report.rows),
                OutputFormat::Json => render_json(&report),
                OutputFormat::HumanTable => render_run_table(&report),
            };
            common.emit(&text)?;
            Ok(0)
        }
        Command::Sweep {
            common,
            param,
            values,
        } => {
            let cfg = common.config()?;
            let param = SweepParam::parse(&param)
                .ok_or_else(|| RunError::Config(format!("unknown sweep parameter '{param}'")))?;
            let rows = cmd_sweep(&cfg, param, &parse_values(&values)?)?;
            let text = match cfg.format {
                OutputFormat::Csv => render_sweep_csv(&rows),
                OutputFormat::Json => render_json(&rows),
                OutputFormat::HumanTable => render_sweep_table(&rows),
            };
            common.emit(&text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(RunError::Invalid(violations)) => {
            for v in &violations {
                println!("{v}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
