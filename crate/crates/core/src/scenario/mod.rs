//! JSON scenarios: describe a space, scheme, ideal, sequence and task, run
//! the matching checker and render a report.

mod example;
mod report;

pub use example::{squares_indicator_scenario, reproduce_squares_indicator, SquaresIndicatorRun};
pub use report::{render, render_csv, render_json, ScenarioReport};

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{DistributionFunction, GridDF, TNorm};
use crate::error::Error;
use crate::ideals::{IdealOracle, OracleDescriptor, Status};
use crate::lacunary::{LacunaryScheme, SchemeDescriptor, SequenceSource};
use crate::pn_convergence::{
    i_theta_convergence_check, limit_scan, nu_convergence_check, theta_convergence_check, ParamGrid, PlantedConfig,
    PlantedInstance,
};
use crate::pn_space::{Norm, Point, PnSpace};
use crate::points_cauchy::{
    cluster_points_scan, i_star_theta_cauchy_check, i_theta_cauchy_check, limit_points_scan, theta_cauchy_check,
    MStrategy,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub space: SpaceDescriptor,
    pub scheme: SchemeDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDescriptor>,
    pub sequence: SequenceDescriptor,
    pub task: TaskDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon_blocks: Option<usize>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDescriptor {
    #[serde(default = "one")]
    pub dim: usize,
    pub mu: MuDescriptor,
    pub tnorm: TNormName,
    #[serde(default)]
    pub norm: NormName,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuDescriptor {
    pub form: MuForm,
    #[serde(default)]
    pub params: MuParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MuForm {
    #[serde(rename = "t/(t+x)")]
    Rational,
    #[serde(rename = "exponential")]
    Exponential,
    #[serde(rename = "grid")]
    Grid,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ts: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNormName {
    Min,
    Product,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormName {
    #[default]
    Euclidean,
    Max,
    Taxicab,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDescriptor {
    pub kind: SequenceKind,
    #[serde(default)]
    pub params: SequenceParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    IndicatorOfSquares,
    Constant,
    Alternating,
    Reciprocal,
    Planted,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<PointValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A point written either as a number (dimension 1) or an array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl PointValue {
    pub fn to_point(&self) -> Point {
        match self {
            PointValue::Scalar(x) => Point::scalar(*x),
            PointValue::Vector(v) => Point(v.clone()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_horizon: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Nu,
    Theta,
    ITheta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyVariant {
    Theta,
    ITheta,
    IStar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TaskDescriptor {
    Check {
        mode: CheckMode,
        #[serde(rename = "L")]
        limit: PointValue,
        #[serde(default)]
        grid: GridDescriptor,
    },
    Scan {
        candidates: Vec<PointValue>,
        #[serde(default)]
        grid: GridDescriptor,
    },
    Cauchy {
        variant: CauchyVariant,
        #[serde(default)]
        grid: GridDescriptor,
        /// Reference indices to try (theta and i_theta variants).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reference: Option<Vec<u64>>,
        /// Index set for the starred variant.
        #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
        m: Option<Vec<u64>>,
    },
    Points {
        candidates: Vec<PointValue>,
        #[serde(default)]
        grid: GridDescriptor,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// File stem for the report, `report` by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub horizon_blocks: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("malformed scenario at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid descriptor at `{path}`: {message}")]
    Invalid { path: String, message: String },
    #[error("execution failed: {0}")]
    Execution(#[from] Error),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Parse { .. } => 3,
            ScenarioError::Invalid { .. } => 4,
            ScenarioError::Execution(_) => 5,
            ScenarioError::Io { .. } => 6,
        }
    }
}

fn invalid(path: &str, e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Invalid {
        path: path.to_string(),
        message: e.to_string(),
    }
}

/// 0 for holds, 1 for fails, 2 for inconclusive.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Holds => 0,
        Status::Fails => 1,
        Status::Inconclusive => 2,
    }
}

/// Parses scenario JSON, reporting syntax errors by line and schema errors
/// by field path.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        invalid(&path, e.into_inner())
    })
}

/// Everything a scenario needs, validated.
pub struct Prepared {
    pub space: PnSpace,
    pub theta: LacunaryScheme,
    pub oracle: Option<IdealOracle>,
    pub seq: SequenceSource,
    pub grid: ParamGrid,
}

fn build_space(d: &SpaceDescriptor) -> Result<PnSpace, ScenarioError> {
    let p = &d.mu.params;
    let mu = match d.mu.form {
        MuForm::Rational => {
            let scale = p.scale.unwrap_or(1.0);
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(invalid("space.mu.params.scale", format!("must be positive, got {scale}")));
            }
            DistributionFunction::Rational { scale }
        }
        MuForm::Exponential => {
            let rate = p.rate.unwrap_or(1.0);
            if !(rate > 0.0 && rate.is_finite()) {
                return Err(invalid("space.mu.params.rate", format!("must be positive, got {rate}")));
            }
            DistributionFunction::Exponential { rate }
        }
        MuForm::Grid => {
            let ts = p.ts.clone().ok_or_else(|| invalid("space.mu.params.ts", "required for grid form"))?;
            let values = p
                .values
                .clone()
                .ok_or_else(|| invalid("space.mu.params.values", "required for grid form"))?;
            DistributionFunction::Grid(GridDF::new(ts, values).map_err(|e| invalid("space.mu.params", e))?)
        }
    };
    let tnorm = match d.tnorm {
        TNormName::Min => TNorm::Min,
        TNormName::Product => TNorm::Product,
    };
    let norm = match d.norm {
        NormName::Euclidean => Norm::Euclidean,
        NormName::Max => Norm::Max,
        NormName::Taxicab => Norm::Taxicab,
    };
    PnSpace::simple_with_norm(d.dim, norm, mu, tnorm).map_err(|e| invalid("space", e))
}

fn build_sequence(d: &SequenceDescriptor, dim: usize, seed: Option<u64>) -> Result<SequenceSource, ScenarioError> {
    let p = &d.params;
    let seq = match d.kind {
        SequenceKind::IndicatorOfSquares => SequenceSource::indicator_of_squares(),
        SequenceKind::Alternating => SequenceSource::alternating(),
        SequenceKind::Reciprocal => {
            let s = p.scale.unwrap_or(1.0);
            if !s.is_finite() {
                return Err(invalid("sequence.params.scale", "must be finite"));
            }
            SequenceSource::reciprocal(s)
        }
        SequenceKind::Constant => {
            let v = p.value.as_ref().ok_or_else(|| invalid("sequence.params.value", "required"))?;
            let pt = Point::new(v.to_point().0).map_err(|e| invalid("sequence.params.value", e))?;
            SequenceSource::constant(pt)
        }
        SequenceKind::Planted => {
            let seed = seed.or(p.seed).unwrap_or(0);
            let cfg = PlantedConfig {
                dim: Some(p.dim.unwrap_or(dim)),
                ..Default::default()
            };
            PlantedInstance::generate(seed, &cfg).map_err(|e| invalid("sequence.params", e))?.seq
        }
    };
    if seq.dim() != dim {
        return Err(invalid(
            "sequence",
            format!("sequence has dimension {} but the space has {dim}", seq.dim()),
        ));
    }
    Ok(seq)
}

fn build_grid(g: &GridDescriptor, blocks: usize, path: &str) -> Result<ParamGrid, ScenarioError> {
    let base = ParamGrid::default();
    let eps = g.eps.clone().unwrap_or_else(|| base.eps().to_vec());
    let alpha = g.alpha.clone().unwrap_or_else(|| base.alpha().to_vec());
    let mut grid = ParamGrid::new(eps, alpha, blocks).map_err(|e| invalid(path, e))?;
    if let Some(n) = g.index_horizon {
        grid = grid.with_index_horizon(n).map_err(|e| invalid(path, e))?;
    }
    Ok(grid)
}

fn task_grid(task: &TaskDescriptor) -> &GridDescriptor {
    match task {
        TaskDescriptor::Check { grid, .. }
        | TaskDescriptor::Scan { grid, .. }
        | TaskDescriptor::Cauchy { grid, .. }
        | TaskDescriptor::Points { grid, .. } => grid,
    }
}

fn needs_oracle(task: &TaskDescriptor) -> bool {
    match task {
        TaskDescriptor::Check { mode, .. } => *mode == CheckMode::ITheta,
        TaskDescriptor::Cauchy { variant, .. } => *variant != CauchyVariant::Theta,
        TaskDescriptor::Scan { .. } | TaskDescriptor::Points { .. } => true,
    }
}

/// Validates every descriptor against its constructor.
pub fn prepare(s: &Scenario, opts: &RunOptions) -> Result<Prepared, ScenarioError> {
    let space = build_space(&s.space)?;
    let theta = LacunaryScheme::new(s.scheme.clone()).map_err(|e| invalid("scheme", e))?;
    let oracle = match &s.oracle {
        Some(d) => Some(IdealOracle::from_descriptor(d).map_err(|e| invalid("oracle", e))?),
        None if needs_oracle(&s.task) => return Err(invalid("oracle", "required for this task")),
        None => None,
    };
    let seq = build_sequence(&s.sequence, space.dim(), opts.seed)?;
    let g = task_grid(&s.task);
    let blocks = opts
        .horizon_blocks
        .or(g.blocks)
        .or(s.horizon_blocks)
        .unwrap_or(ParamGrid::default().blocks());
    let grid = build_grid(g, blocks, "task.grid")?;
    if let Some(max) = theta.max_blocks() {
        if blocks > max {
            return Err(invalid("scheme.ks", format!("{blocks} blocks requested but only {max} listed")));
        }
    }
    theta.validate_horizon(blocks).map_err(|e| invalid("scheme", e))?;
    Ok(Prepared {
        space,
        theta,
        oracle,
        seq,
        grid,
    })
}

fn points_of(cands: &[PointValue], dim: usize, path: &str) -> Result<Vec<Point>, ScenarioError> {
    cands
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let p = Point::new(c.to_point().0).map_err(|e| invalid(&format!("{path}[{i}]"), e))?;
            if p.dim() != dim {
                return Err(invalid(&format!("{path}[{i}]"), format!("expected dimension {dim}")));
            }
            Ok(p)
        })
        .collect()
}

/// Runs a parsed scenario.
pub fn execute(s: &Scenario, opts: &RunOptions) -> Result<ScenarioReport, ScenarioError> {
    let p = prepare(s, opts)?;
    let oracle = || p.oracle.as_ref().expect("oracle presence checked in prepare");
    let dim = p.space.dim();
    Ok(match &s.task {
        TaskDescriptor::Check { mode, limit, .. } => {
            let l = points_of(std::slice::from_ref(limit), dim, "task.check.L")?.remove(0);
            let rep = match mode {
                CheckMode::Nu => nu_convergence_check(&p.seq, &p.space, &l, &p.grid)?,
                CheckMode::Theta => theta_convergence_check(&p.seq, &p.space, &p.theta, &l, &p.grid)?,
                CheckMode::ITheta => i_theta_convergence_check(&p.seq, &p.space, &p.theta, oracle(), &l, &p.grid)?,
            };
            ScenarioReport::Convergence(rep)
        }
        TaskDescriptor::Scan { candidates, .. } => {
            let cands = points_of(candidates, dim, "task.scan.candidates")?;
            let scan = limit_scan(&p.seq, &p.space, &p.theta, oracle(), &cands, &p.grid)?;
            ScenarioReport::scan(scan)
        }
        TaskDescriptor::Cauchy { variant, reference, m, .. } => {
            let strategy = match reference {
                Some(ms) => MStrategy::Fixed(ms.clone()),
                None => MStrategy::Default,
            };
            let rep = match variant {
                CauchyVariant::Theta => theta_cauchy_check(&p.seq, &p.space, &p.theta, &p.grid, &strategy)?,
                CauchyVariant::ITheta => i_theta_cauchy_check(&p.seq, &p.space, &p.theta, oracle(), &p.grid, &strategy)?,
                CauchyVariant::IStar => {
                    i_star_theta_cauchy_check(&p.seq, &p.space, &p.theta, oracle(), &p.grid, m.as_deref())?
                }
            };
            ScenarioReport::Convergence(rep)
        }
        TaskDescriptor::Points { candidates, .. } => {
            let cands = points_of(candidates, dim, "task.points.candidates")?;
            let limit = limit_points_scan(&p.seq, &p.space, &p.theta, oracle(), &cands, &p.grid)?;
            let cluster = cluster_points_scan(&p.seq, &p.space, &p.theta, oracle(), &cands, &p.grid)?;
            ScenarioReport::points(limit, cluster)
        }
    })
}

/// Result of [`run_scenario`].
#[derive(Debug)]
pub struct RunOutcome {
    pub report: ScenarioReport,
    pub rendered: String,
    pub written: Option<PathBuf>,
}

impl RunOutcome {
    pub fn status(&self) -> Status {
        self.report.overall()
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(self.status())
    }
}

/// Loads, runs and renders a scenario; writes the report into `opts.out`
/// when given.
pub fn run_scenario(path: &Path, opts: &RunOptions) -> Result<RunOutcome, ScenarioError> {
    let text = fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let scenario = parse_scenario(&text)?;
    run_parsed(&scenario, opts)
}

pub fn run_parsed(scenario: &Scenario, opts: &RunOptions) -> Result<RunOutcome, ScenarioError> {
    let report = execute(scenario, opts)?;
    let format = opts.format.or(scenario.output.format).unwrap_or_default();
    let rendered = render(&report, format);
    let written = match &opts.out {
        Some(dir) => {
            let io = |e: std::io::Error| ScenarioError::Io {
                path: dir.display().to_string(),
                message: e.to_string(),
            };
            fs::create_dir_all(dir).map_err(io)?;
            let stem = scenario.output.name.as_deref().unwrap_or("report");
            let file = dir.join(format!("{stem}.{}", format.extension()));
            fs::write(&file, &rendered).map_err(io)?;
            Some(file)
        }
        None => None,
    };
    Ok(RunOutcome {
        report,
        rendered,
        written,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "space": {"dim": 1, "mu": {"form": "t/(t+x)"}, "tnorm": "product"},
        "scheme": {"kind": "geometric", "rho": 2},
        "oracle": {"kind": "density", "horizon": 1000000, "tol": 0.01},
        "sequence": {"kind": "alternating"},
        "task": {"check": {"mode": "i_theta", "L": 1}}
    }"#;

    #[test]
    fn alternating_fails() {
        let s = parse_scenario(BASE).unwrap();
        let out = run_parsed(&s, &RunOptions::default()).unwrap();
        assert_eq!(out.exit_code(), 1);
    }

    #[test]
    fn short_horizon_is_inconclusive() {
        let s = parse_scenario(BASE).unwrap();
        let opts = RunOptions {
            horizon_blocks: Some(3),
            ..Default::default()
        };
        let out = run_parsed(&s, &opts).unwrap();
        assert_eq!(out.exit_code(), 2);
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let err = parse_scenario("{\n  \"space\": ,\n}").unwrap_err();
        assert!(matches!(err, ScenarioError::Parse { line: 2, .. }), "{err}");
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn schema_errors_carry_a_path() {
        let bad = BASE.replace("\"rho\": 2", "\"rho\": \"two\"");
        let err = parse_scenario(&bad).unwrap_err();
        match &err {
            ScenarioError::Invalid { path, .. } => assert!(path.starts_with("scheme"), "{path}"),
            other => panic!("{other}"),
        }
        let bad = BASE.replace("\"rho\": 2", "\"rho\": 0.5");
        let err = run_parsed(&parse_scenario(&bad).unwrap(), &RunOptions::default()).unwrap_err();
        assert!(matches!(&err, ScenarioError::Invalid { path, .. } if path == "scheme"), "{err}");
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn missing_oracle_is_reported() {
        let bad = BASE.replace(r#""oracle": {"kind": "density", "horizon": 1000000, "tol": 0.01},"#, "");
        let err = run_parsed(&parse_scenario(&bad).unwrap(), &RunOptions::default()).unwrap_err();
        assert!(matches!(&err, ScenarioError::Invalid { path, .. } if path == "oracle"), "{err}");
    }
}
