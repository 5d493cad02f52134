use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Storage class of a [`DistributionFunction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DfKind {
    StepEps0,
    Parametric,
    GridSampled,
}

/// A non-decreasing map from the extended reals into `[0, 1]`.
///
/// Left-continuity is a modelling assumption only: every operation here works
/// on pointwise values, and finitely many samples cannot distinguish a left-
/// from a right-continuous function. The same goes for the one-sided limit
/// conditions of proper distribution functions; the `Parametric` kind is where
/// such functions live, but those limits are not checked.
#[derive(Clone)]
pub enum DistributionFunction {
    /// The unit step at zero: 0 for `t <= 0`, 1 for `t > 0`.
    Step,
    /// `t / (t + scale)` for `t > 0`, 0 otherwise.
    Rational { scale: f64 },
    /// `1 - exp(-rate * t)` for `t > 0`, 0 otherwise.
    Exponential { rate: f64 },
    /// Piecewise-linear interpolation of a grid.
    Grid(GridDF),
    /// Anything else. No invariant is enforced; use [`DistributionFunction::check_on`]
    /// to audit it.
    Custom {
        label: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for DistributionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Step => write!(f, "Step"),
            Self::Rational { scale } => write!(f, "Rational {{ scale: {scale} }}"),
            Self::Exponential { rate } => write!(f, "Exponential {{ rate: {rate} }}"),
            Self::Grid(g) => write!(f, "Grid({} points)", g.len()),
            Self::Custom { label, .. } => write!(f, "Custom({label})"),
        }
    }
}

impl DistributionFunction {
    /// The `μ(t) = t/(t+1)` form used by the standard real-line example.
    pub fn rational() -> Self {
        Self::Rational { scale: 1.0 }
    }

    pub fn custom(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn kind(&self) -> DfKind {
        match self {
            Self::Step => DfKind::StepEps0,
            Self::Rational { .. } | Self::Exponential { .. } | Self::Custom { .. } => {
                DfKind::Parametric
            }
            Self::Grid(_) => DfKind::GridSampled,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t == f64::NEG_INFINITY {
            return 0.0;
        }
        if t == f64::INFINITY {
            return 1.0;
        }
        match self {
            Self::Step => {
                if t > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Rational { scale } => {
                if t > 0.0 {
                    t / (t + scale)
                } else {
                    0.0
                }
            }
            Self::Exponential { rate } => {
                if t > 0.0 {
                    -(-rate * t).exp_m1()
                } else {
                    0.0
                }
            }
            Self::Grid(g) => g.eval(t),
            Self::Custom { f, .. } => f(t),
        }
    }

    /// Best-effort test for "this is the unit step". Exact for the built-in
    /// kinds; for custom functions it probes a few tiny positive arguments.
    pub fn is_step(&self) -> bool {
        match self {
            Self::Step => true,
            Self::Rational { .. } | Self::Exponential { .. } => false,
            _ => {
                self.eval(0.0) == 0.0
                    && [1e-300, 1e-12, 1e-6, 1e-3].iter().all(|&t| self.eval(t) == 1.0)
            }
        }
    }

    /// Audits monotonicity and range on the given abscissae.
    pub fn check_on(&self, ts: &[f64]) -> crate::axioms::AxiomReport {
        use crate::axioms::{AxiomOutcome, AxiomReport};
        let mut sorted: Vec<f64> = ts.iter().copied().filter(|t| !t.is_nan()).collect();
        sorted.sort_by(f64::total_cmp);
        let mut mono = AxiomOutcome::new("non-decreasing");
        let mut range = AxiomOutcome::new("range in [0,1]");
        let mut prev: Option<(f64, f64)> = None;
        for &t in &sorted {
            let v = self.eval(t);
            range.record((v - 1.0).max(-v).max(0.0), 0.0, || format!("F({t}) = {v}"));
            if let Some((pt, pv)) = prev {
                mono.record(pv - v, 0.0, || format!("F({pt}) = {pv} > F({t}) = {v}"));
            }
            prev = Some((t, v));
        }
        AxiomReport {
            outcomes: vec![mono, range],
            exact: false,
        }
    }
}

/// A distribution function sampled on a finite increasing grid starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDF {
    grid: Arc<[f64]>,
    values: Vec<f64>,
}

impl GridDF {
    pub fn new(grid: impl Into<Arc<[f64]>>, values: Vec<f64>) -> Result<Self> {
        let grid = grid.into();
        validate_grid(&grid)?;
        if values.len() != grid.len() {
            return Err(Error::Shape(format!(
                "grid has {} abscissae but {} values",
                grid.len(),
                values.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("value[{i}] = {v} outside [0,1]")));
            }
            if i > 0 && v < values[i - 1] {
                return Err(Error::Construction(format!(
                    "values decrease at index {i}: {} > {v}",
                    values[i - 1]
                )));
            }
        }
        Ok(Self { grid, values })
    }

    /// `points` evenly spaced abscissae on `[0, t_max]`.
    pub fn uniform_grid(t_max: f64, points: usize) -> Result<Arc<[f64]>> {
        if points < 2 || !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::Domain(format!(
                "uniform grid needs >= 2 points and finite t_max > 0 (got {points}, {t_max})"
            )));
        }
        let step = t_max / (points - 1) as f64;
        Ok((0..points).map(|i| i as f64 * step).collect())
    }

    /// Samples `df` on `grid`.
    pub fn sample(df: &DistributionFunction, grid: Arc<[f64]>) -> Result<Self> {
        let values = grid.iter().map(|&t| df.eval(t)).collect();
        Self::new(grid, values)
    }

    /// The unit step restricted to `grid`.
    pub fn step_on(grid: Arc<[f64]>) -> Result<Self> {
        Self::sample(&DistributionFunction::Step, grid)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub(crate) fn grid_arc(&self) -> &Arc<[f64]> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_distance_df(&self) -> bool {
        self.values.first() == Some(&0.0)
    }

    /// Linear interpolation inside the grid, 0 below it, last value above it.
    pub fn eval(&self, t: f64) -> f64 {
        if t.is_nan() || t < 0.0 {
            return 0.0;
        }
        let n = self.grid.len();
        if t >= self.grid[n - 1] {
            return self.values[n - 1];
        }
        let hi = self.grid.partition_point(|&g| g <= t);
        let lo = hi - 1;
        let (t0, t1) = (self.grid[lo], self.grid[hi]);
        let (v0, v1) = (self.values[lo], self.values[hi]);
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Shape("empty support grid".into()));
    }
    if grid[0] != 0.0 {
        return Err(Error::Construction(format!("grid must start at 0, got {}", grid[0])));
    }
    for w in grid.windows(2) {
        if !(w[1] > w[0]) || !w[1].is_finite() {
            return Err(Error::Construction(format!(
                "grid must be finite and strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}
