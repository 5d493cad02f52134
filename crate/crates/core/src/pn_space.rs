//! Probabilistic normed spaces over `R^d` and the simple-space construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{DistributionFunction, TNorm};
use crate::axioms::{AxiomOutcome, AxiomReport};
use crate::error::{Error, Result};

/// Tolerance used when sampling the triangle inequality.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// An element of the carrier `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("a point needs at least one coordinate".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("non-finite coordinate {bad}")));
        }
        Ok(Self(coords))
    }

    pub fn scalar(x: f64) -> Self {
        Self(vec![x])
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, a: f64) -> Point {
        Point(self.0.iter().map(|c| a * c).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Point> for f64 {
    type Output = Point;
    fn mul(self, rhs: &Point) -> Point {
        rhs.scale(self)
    }
}

/// Crisp norm on the carrier.
#[derive(Clone)]
pub enum Norm {
    Euclidean,
    Max,
    Taxicab,
    Custom {
        name: String,
        f: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Euclidean => write!(f, "Euclidean"),
            Self::Max => write!(f, "Max"),
            Self::Taxicab => write!(f, "Taxicab"),
            Self::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

impl Norm {
    pub fn eval(&self, v: &[f64]) -> f64 {
        match self {
            Self::Euclidean => {
                if v.len() == 1 {
                    v[0].abs()
                } else {
                    v.iter().map(|c| c * c).sum::<f64>().sqrt()
                }
            }
            Self::Max => v.iter().fold(0.0f64, |m, c| m.max(c.abs())),
            Self::Taxicab => v.iter().map(|c| c.abs()).sum(),
            Self::Custom { f, .. } => f(v),
        }
    }

    /// `‖a - b‖` without allocating.
    pub(crate) fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Self::Euclidean if a.len() == 1 => (a[0] - b[0]).abs(),
            Self::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Self::Max => a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())),
            Self::Taxicab => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            Self::Custom { f, .. } => {
                let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                f(&d)
            }
        }
    }
}

/// A probabilistic normed space `(R^d, ν, T)` with `ν_x(t) = μ(t / ‖x‖)` for
/// `x ≠ 0` and `ν_0` the unit step.
#[derive(Debug, Clone)]
pub struct PnSpace {
    dim: usize,
    norm: Norm,
    mu: DistributionFunction,
    tnorm: TNorm,
}

impl PnSpace {
    /// Builds the simple space generated by `(R^dim, ‖·‖)` and `mu`.
    ///
    /// Rejects `mu(0) != 0` and `mu` equal to the unit step.
    pub fn simple(dim: usize, mu: DistributionFunction, tnorm: TNorm) -> Result<Self> {
        Self::simple_with_norm(dim, Norm::Euclidean, mu, tnorm)
    }

    pub fn simple_with_norm(dim: usize, norm: Norm, mu: DistributionFunction, tnorm: TNorm) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Construction("dimension must be positive".into()));
        }
        let at_zero = mu.eval(0.0);
        if at_zero != 0.0 {
            return Err(Error::Construction(format!("mu(0) must be 0, got {at_zero}")));
        }
        if mu.is_step() {
            return Err(Error::Construction("mu must differ from the unit step".into()));
        }
        Ok(Self { dim, norm, mu, tnorm })
    }

    /// The real line with `ν_x(t) = t / (t + |x|)` and the product t-norm.
    pub fn real_line() -> Self {
        Self::simple(1, DistributionFunction::rational(), TNorm::Product).expect("valid space")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> &Norm {
        &self.norm
    }

    pub fn mu(&self) -> &DistributionFunction {
        &self.mu
    }

    pub fn tnorm(&self) -> &TNorm {
        &self.tnorm
    }

    /// `ν_x(t)`.
    pub fn nu(&self, x: &Point, t: f64) -> f64 {
        self.nu_at_norm(self.norm.eval(&x.0), t)
    }

    /// `ν_{a - b}(t)` without building the difference.
    pub fn nu_diff(&self, a: &[f64], b: &[f64], t: f64) -> f64 {
        self.nu_at_norm(self.norm.dist(a, b), t)
    }

    /// `ν` for a vector whose crisp norm is already known.
    #[inline]
    pub fn nu_at_norm(&self, norm: f64, t: f64) -> f64 {
        if norm == 0.0 {
            DistributionFunction::Step.eval(t)
        } else if t == f64::INFINITY {
            1.0
        } else {
            self.mu.eval(t / norm)
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::Shape(format!(
                "point has dimension {} but the space has {}",
                p.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Membership in the open ball `B(center, r; t) = { y : ν_{y - center}(t) > 1 - r }`.
    pub fn open_ball_contains(&self, center: &Point, r: f64, t: f64, y: &Point) -> Result<bool> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!("radius must lie in (0,1), got {r}")));
        }
        if !(t > 0.0) {
            return Err(Error::Domain(format!("t must be positive, got {t}")));
        }
        self.check_point(center)?;
        self.check_point(y)?;
        Ok(self.nu_diff(&y.0, &center.0, t) > 1.0 - r)
    }

    /// Samples axioms (i), (ii) forward direction, (iii), (iv) and
    /// monotonicity of `ν_x` in `t`.
    ///
    /// Each sample `(x, y, s, t)` exercises (i) and (iii) at `x`, (iv) at
    /// `(x, y, s, t)`, and monotonicity between `s` and `t`. (iii) is tried for
    /// the scalars in [`SCALARS`]. The reverse direction of (ii) quantifies
    /// over all `t` and is not sampled; for simple spaces it holds whenever
    /// `μ(u) < 1` for finite `u`.
    pub fn check_axioms(&self, samples: &[(Point, Point, f64, f64)]) -> AxiomReport {
        let mut ax1 = AxiomOutcome::new("(i) nu_x(0) = 0");
        let mut ax2 = AxiomOutcome::new("(ii) nu_0(t) = 1, t > 0");
        let mut ax3 = AxiomOutcome::new("(iii) scaling");
        let mut ax4 = AxiomOutcome::new("(iv) triangle");
        let mut mono = AxiomOutcome::new("nu_x non-decreasing");
        let zero = Point::zero(self.dim);
        for (x, y, s, t) in samples {
            let (s, t) = (*s, *t);
            ax1.record(self.nu(x, 0.0).abs(), 0.0, || format!("x = {x}"));
            for arg in [s, t] {
                if arg > 0.0 {
                    ax2.record(1.0 - self.nu(&zero, arg), 0.0, || format!("t = {arg}"));
                }
            }
            for &a in SCALARS {
                let lhs = self.nu(&x.scale(a), t);
                let rhs = self.nu(x, t / a.abs());
                ax3.record((lhs - rhs).abs(), TRIANGLE_TOL, || {
                    format!("a = {a}, x = {x}, t = {t}: {lhs} vs {rhs}")
                });
            }
            let sum = x + y;
            let lhs = self.nu(&sum, s + t);
            let rhs = self.tnorm.apply(self.nu(x, s), self.nu(y, t));
            ax4.record(rhs - lhs, TRIANGLE_TOL, || {
                format!("x = {x}, y = {y}, s = {s}, t = {t}: {lhs} < {rhs}")
            });
            let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
            for p in [x, y] {
                let (a, b) = (self.nu(p, lo), self.nu(p, hi));
                mono.record(a - b, 0.0, || format!("x = {p}: nu({lo}) = {a} > nu({hi}) = {b}"));
            }
        }
        AxiomReport {
            outcomes: vec![ax1, ax2, ax3, ax4, mono],
            exact: false,
        }
    }
}

/// Scalars used when sampling the scaling axiom.
pub const SCALARS: &[f64] = &[-3.0, -1.0, -0.5, 0.25, 2.0, 7.5];

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> PnSpace {
        PnSpace::real_line()
    }

    #[test]
    fn real_line_values() {
        let s = example();
        assert_eq!(s.nu(&Point::scalar(1.0), 1.0), 0.5);
        assert_eq!(s.nu(&Point::scalar(2.0), 2.0), 0.5);
        assert_eq!(s.nu(&Point::scalar(5.0), 0.0), 0.0);
        assert_eq!(s.nu(&Point::scalar(0.0), 1e-9), 1.0);
        let x = 0.37;
        let t = 1.9;
        assert!((s.nu(&Point::scalar(x), t) - t / (t + x)).abs() < 1e-15);
    }

    #[test]
    fn plane_norm() {
        let s = PnSpace::simple(2, DistributionFunction::rational(), TNorm::Min).unwrap();
        assert_eq!(s.nu(&Point(vec![3.0, 4.0]), 5.0), 0.5);
    }

    #[test]
    fn construction_errors() {
        assert!(PnSpace::simple(1, DistributionFunction::Step, TNorm::Min).is_err());
        let shifted = DistributionFunction::custom("shifted", |t| 0.1 + 0.9 * t.max(0.0) / (1.0 + t.max(0.0)));
        assert!(PnSpace::simple(1, shifted, TNorm::Min).is_err());
        assert!(PnSpace::simple(0, DistributionFunction::rational(), TNorm::Min).is_err());
    }

    #[test]
    fn open_ball() {
        let s = example();
        let c = Point::scalar(0.0);
        let y = Point::scalar(1.0);
        assert!(!s.open_ball_contains(&c, 0.4, 1.0, &y).unwrap());
        assert!(s.open_ball_contains(&c, 0.6, 1.0, &y).unwrap());
        assert!(s.open_ball_contains(&y, 0.01, 0.01, &y).unwrap());
        assert!(s.open_ball_contains(&c, 1.0, 1.0, &y).is_err());
        assert!(s.open_ball_contains(&c, 0.5, 0.0, &y).is_err());
    }

    #[test]
    fn corrupted_mu_is_caught() {
        // Non-monotone mu: passes construction, fails the audit.
        let bumpy = DistributionFunction::custom("bumpy", |t| {
            if t <= 0.0 {
                0.0
            } else if t < 1.0 {
                0.9
            } else {
                0.3 + 0.6 * (1.0 - 1.0 / (1.0 + t))
            }
        });
        let s = PnSpace::simple(1, bumpy, TNorm::Min).unwrap();
        let samples = vec![
            (Point::scalar(1.0), Point::scalar(1.0), 0.5, 0.5),
            (Point::scalar(2.0), Point::scalar(0.5), 0.7, 3.0),
        ];
        let rep = s.check_axioms(&samples);
        assert!(!rep.all_passed());
        assert!(!rep.get("nu_x non-decreasing").unwrap().passed || !rep.get("(iv) triangle").unwrap().passed);
    }
}
