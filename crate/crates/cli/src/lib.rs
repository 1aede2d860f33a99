//! Command-line front end for `ovalsweep`.
//!
//! [`run`] parses arguments, dispatches a verb and writes its report as JSON
//! (or `key: value` text with `--format text`) to `out`. Exit codes: 0 on
//! success, 1 on bad input, 2 when a sweep leaves the convex model.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ovalsweep::analysis::{
    cap_report_with, default_search_ranges, disk_maximizer_check, lower_bound_half_perimeter,
    lower_bound_integral, ratio_report_with, search_trapezoid, trapezoid_report_with,
    AnalysisError,
};
use ovalsweep::enclosure::{min_parallelogram_with, min_rectangle_with, EnclosureError};
use ovalsweep::geom::{
    make_disk, make_reuleaux, solve_trapezoid_alpha, ConvexRegion, ToleranceConfig,
};
use ovalsweep::sweep::{
    plan_best_fan, plan_disk, plan_fan, plan_parallelogram_2sweep, plan_rectangle_2sweep,
    plan_reuleaux, simulate_with, SweepError, SweepPlan,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub mod render;
pub mod shape;

use render::{count_class, RenderSpec};
use shape::AngleUnit;

/// Environment variable overriding `eps_num`.
pub const EPS_ENV: &str = "OVALSWEEP_EPS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("model violation: {0}")]
    Model(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Model(_) => 2,
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        if e.is_model_violation() {
            CliError::Model(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<EnclosureError> for CliError {
    fn from(e: EnclosureError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Sweep(s) => s.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ovalsweep", version, about = "Plan, simulate and bound slanted sweeps of convex regions")]
pub struct Cli {
    /// Polygon file `{"vertices": [[x, y], ...]}`.
    #[arg(long, global = true, value_name = "FILE")]
    pub shape: Option<PathBuf>,
    /// Read angles on the command line as radians instead of degrees.
    #[arg(long, global = true)]
    pub radians: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum-perimeter enclosing rectangle or parallelogram.
    Enclose {
        kind: EncloseKind,
        /// Generator spec, e.g. `trapezoid:alpha=35,kappa=0.36`.
        spec: Option<String>,
    },
    /// Build a sweep plan.
    Plan {
        planner: Planner,
        spec: Option<String>,
        /// Excluded edge for the fan planner (default: the longest).
        #[arg(long)]
        edge: Option<usize>,
        /// Resolution of the Reuleaux and disk pipelines.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a plan file on a shape.
    Simulate {
        #[arg(long, value_name = "FILE")]
        plan: PathBuf,
        spec: Option<String>,
    },
    /// Half-perimeter lower bound on the sweeping cost.
    Lowerbound {
        spec: Option<String>,
        /// Quadrature nodes for the independent check.
        #[arg(long, default_value_t = 3600)]
        m: usize,
    },
    /// Best available plan against the lower bound.
    Ratio { spec: Option<String> },
    /// Evaluate one of the constructions where 2 sweeps are not optimal.
    Counterexample {
        name: Counterexample,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Search trapezoid parameters for the largest 2-sweep/3-sweep ratio.
    Search {
        #[arg(long, value_name = "A,B", value_parser = parse_pair)]
        alpha_range: Option<(f64, f64)>,
        #[arg(long, value_name = "C,D", value_parser = parse_pair)]
        kappa_range: Option<(f64, f64)>,
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
    /// Draw a shape with a plan and its intermediate states as SVG.
    Render {
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        spec: Option<String>,
        /// Plan file; without it the chosen planner is used.
        #[arg(long, value_name = "FILE", conflicts_with = "planner")]
        plan: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Planner::A2)]
        planner: Planner,
        #[arg(long)]
        edge: Option<usize>,
        #[arg(long, default_value_t = 640, value_parser = clap::value_parser!(u32).range(64..))]
        width: u32,
        #[arg(long)]
        no_states: bool,
        #[arg(long)]
        no_vectors: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncloseKind {
    Rect,
    Para,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Planner {
    A2,
    Para,
    Fan,
    Reuleaux,
    Disk,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Counterexample {
    Trapezoid,
    TrapezoidSearch,
    Reuleaux,
    Disk,
    Cap,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected two comma-separated numbers")?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((parse(a)?, parse(b)?))
}

struct Context {
    shape: Option<PathBuf>,
    unit: AngleUnit,
    tol: ToleranceConfig,
}

impl Context {
    fn region(&self, spec: Option<&str>) -> Result<ConvexRegion, CliError> {
        shape::resolve(self.shape.as_deref(), spec, self.unit)
    }
}

/// Tolerances with `eps_num` taken from `OVALSWEEP_EPS` when set.
pub fn tolerances_from_env() -> Result<ToleranceConfig, CliError> {
    let base = ToleranceConfig::default();
    let Ok(raw) = std::env::var(EPS_ENV) else {
        return Ok(base);
    };
    let eps: f64 = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{EPS_ENV}='{raw}' is not a number")))?;
    let tol = base.with_eps_num(eps);
    tol.validate()
        .map_err(|e| CliError::Input(format!("{EPS_ENV}: {e}")))?;
    Ok(tol)
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn run(argv: &[String], out: &mut impl Write, err: &mut impl Write) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(value) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("finite report"),
                Format::Text => as_text(&value),
            };
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn to_value(report: &impl Serialize) -> Value {
    serde_json::to_value(report).expect("serializable report")
}

fn execute(cli: Cli) -> Result<Value, CliError> {
    let ctx = Context {
        shape: cli.shape,
        unit: if cli.radians { AngleUnit::Radians } else { AngleUnit::Degrees },
        tol: tolerances_from_env()?,
    };
    match cli.command {
        Command::Enclose { kind, spec } => {
            let region = ctx.region(spec.as_deref())?;
            let result = match kind {
                EncloseKind::Rect => min_rectangle_with(&region, &ctx.tol),
                EncloseKind::Para => min_parallelogram_with(&region, &ctx.tol)?,
            };
            let mut v = to_value(&result);
            v["semiperimeter"] = json!(result.semiperimeter());
            v["tolerances"] = to_value(&ctx.tol);
            Ok(v)
        }
        Command::Plan { planner, spec, edge, n } => {
            let (region, plan) = build_plan(&ctx, planner, spec.as_deref(), edge, n)?;
            let mut v = to_value(&plan);
            v["planner"] = json!(planner_name(planner));
            v["vertices"] = json!(region.len());
            Ok(v)
        }
        Command::Simulate { plan, spec } => {
            let region = ctx.region(spec.as_deref())?;
            let plan = read_plan(&plan)?;
            let result = simulate_with(&region, &plan, &ctx.tol)?;
            let mut v = to_value(&result);
            v["planned_cost"] = json!(plan.planned_cost);
            Ok(v)
        }
        Command::Lowerbound { spec, m } => {
            let region = ctx.region(spec.as_deref())?;
            Ok(json!({
                "lower_bound": lower_bound_half_perimeter(&region),
                "perimeter": region.perimeter(),
                "quadrature": lower_bound_integral(&region, m)?,
                "quadrature_nodes": m,
                "provenance": "half-perimeter-bound",
                "tolerances": ctx.tol,
            }))
        }
        Command::Ratio { spec } => {
            let region = ctx.region(spec.as_deref())?;
            Ok(to_value(&ratio_report_with(&region, &ctx.tol)?))
        }
        Command::Counterexample { name, n } => counterexample(&ctx, name, n),
        Command::Search { alpha_range, kappa_range, grid } => {
            let (default_alpha, default_kappa) = default_search_ranges();
            let alpha = alpha_range
                .map(|(a, b)| (ctx.unit.angle(a), ctx.unit.angle(b)))
                .unwrap_or(default_alpha);
            let kappa = kappa_range.unwrap_or(default_kappa);
            let mut v = to_value(&search_trapezoid(alpha, kappa, grid)?);
            v["tolerances"] = to_value(&ctx.tol);
            Ok(v)
        }
        Command::Render { out, spec, plan, planner, edge, width, no_states, no_vectors } => {
            let (region, plan) = match plan {
                Some(path) => (ctx.region(spec.as_deref())?, read_plan(&path)?),
                None => build_plan(&ctx, planner, spec.as_deref(), edge, None)?,
            };
            let result = simulate_with(&region, &plan, &ctx.tol)?;
            let render_spec = RenderSpec {
                width_px: width,
                show_states: !no_states,
                show_vectors: !no_vectors,
                ..RenderSpec::default()
            };
            let svg = render::render(&region, &plan, &result, &render_spec);
            std::fs::write(&out, &svg)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
            Ok(json!({
                "out": out.display().to_string(),
                "states": count_class(&svg, "state"),
                "vectors": count_class(&svg, "vector"),
                "cost": plan.planned_cost,
            }))
        }
    }
}

fn planner_name(p: Planner) -> &'static str {
    match p {
        Planner::A2 => "a2",
        Planner::Para => "para",
        Planner::Fan => "fan",
        Planner::Reuleaux => "reuleaux",
        Planner::Disk => "disk",
    }
}

const REULEAUX_N: usize = 2048;
const DISK_N: usize = 4096;
const CAP_N: usize = 4096;

/// The Reuleaux and disk planners build their own shape and ignore any
/// given one.
fn build_plan(
    ctx: &Context,
    planner: Planner,
    spec: Option<&str>,
    edge: Option<usize>,
    n: Option<usize>,
) -> Result<(ConvexRegion, SweepPlan), CliError> {
    let input_err = |e: ovalsweep::geom::GeomError| CliError::Input(e.to_string());
    match planner {
        Planner::Reuleaux => {
            let n = n.unwrap_or(REULEAUX_N);
            Ok((make_reuleaux(n).map_err(input_err)?, plan_reuleaux(n)?))
        }
        Planner::Disk => {
            let n = n.unwrap_or(DISK_N);
            Ok((make_disk(n).map_err(input_err)?, plan_disk(n)?))
        }
        _ => {
            let region = ctx.region(spec)?;
            let plan = match planner {
                Planner::A2 => plan_rectangle_2sweep(&region),
                Planner::Para => plan_parallelogram_2sweep(&region)?,
                Planner::Fan => match edge {
                    Some(e) => plan_fan(&region, e)?,
                    None => plan_best_fan(&region)?,
                },
                Planner::Reuleaux | Planner::Disk => unreachable!(),
            };
            Ok((region, plan))
        }
    }
}

fn read_plan(path: &Path) -> Result<SweepPlan, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let plan: SweepPlan = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed plan in {}: {e}", path.display())))?;
    // the stored cost is informational; the sweeps decide it
    Ok(SweepPlan::new(plan.sweeps, plan.target))
}

fn counterexample(ctx: &Context, name: Counterexample, n: Option<usize>) -> Result<Value, CliError> {
    match name {
        Counterexample::Trapezoid => {
            let a = solve_trapezoid_alpha();
            Ok(to_value(&trapezoid_report_with(a, (2.0 * a.radians()).cos(), &ctx.tol)?))
        }
        Counterexample::TrapezoidSearch => {
            let ((a0, a1), kappa) = default_search_ranges();
            let found = search_trapezoid((a0, a1), kappa, 201)?;
            let report = trapezoid_report_with(found.alpha, found.kappa, &ctx.tol)?;
            Ok(json!({ "search": found, "report": report }))
        }
        Counterexample::Reuleaux => {
            let n = n.unwrap_or(REULEAUX_N);
            let region = make_reuleaux(n).map_err(|e| CliError::Input(e.to_string()))?;
            pipeline_report(ctx, &region, plan_reuleaux(n)?, "reuleaux-pipeline")
        }
        Counterexample::Disk => {
            let n = n.unwrap_or(DISK_N);
            let region = make_disk(n).map_err(|e| CliError::Input(e.to_string()))?;
            let mut v = pipeline_report(ctx, &region, plan_disk(n)?, "disk-cap-angle")?;
            v["maximizer"] = to_value(&disk_maximizer_check());
            Ok(v)
        }
        Counterexample::Cap => Ok(to_value(&cap_report_with(n.unwrap_or(CAP_N), &ctx.tol)?)),
    }
}

fn pipeline_report(
    ctx: &Context,
    region: &ConvexRegion,
    plan: SweepPlan,
    provenance: &str,
) -> Result<Value, CliError> {
    let sim = simulate_with(region, &plan, &ctx.tol)?;
    let two = min_parallelogram_with(region, &ctx.tol)?.semiperimeter();
    Ok(json!({
        "vertices": region.len(),
        "plan_cost": plan.planned_cost,
        "sweeps": plan.len(),
        "final_point": sim.final_point,
        "two_sweep_min": two,
        "gap": two - plan.planned_cost,
        "provenance": provenance,
        "tolerances": ctx.tol,
    }))
}

/// Top-level scalars as `key: value` lines; nested values are summarized.
fn as_text(v: &Value) -> String {
    let Value::Object(map) = v else {
        return v.to_string();
    };
    let mut lines = Vec::with_capacity(map.len());
    for (k, item) in map {
        let shown = match item {
            Value::Array(a) => format!("[{} items]", a.len()),
            Value::Object(_) => "{...}".to_string(),
            other => other.to_string(),
        };
        lines.push(format!("{k}: {shown}"));
    }
    lines.join("\n")
}
