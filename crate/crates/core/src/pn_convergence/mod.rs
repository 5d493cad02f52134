//! Ordinary, lacunary and ideal lacunary convergence in a PN space, checked
//! on a finite parameter grid.

mod planted;

pub use planted::{PlantedConfig, PlantedInstance};

use serde::Serialize;

use crate::classical_modes::{real_i_theta_check, RealSequence, MIN_TAIL_BLOCKS};
use crate::error::{Error, Result};
use crate::ideals::{Evidence, Ideal, IndexSet, Status, Verdict};
use crate::lacunary::{DistanceProfile, LacunaryScheme, Prefix, SequenceSource};
use crate::pn_space::{Point, PnSpace};

/// Finite stand-in for "every `ε > 0` and `α ∈ (0, 1)`".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamGrid {
    eps: Vec<f64>,
    alpha: Vec<f64>,
    blocks: usize,
    index_horizon: Option<u64>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        Self {
            eps: vec![2.0, 1.0, 0.5, 0.1],
            alpha: vec![0.1, 0.25, 0.5, 0.75],
            blocks: 20,
            index_horizon: None,
        }
    }
}

impl ParamGrid {
    /// Index horizon for checks that have no lacunary scheme.
    pub const DEFAULT_INDEX_HORIZON: u64 = 100_000;

    /// `eps` must be strictly decreasing and positive, `alpha` in `(0, 1)`.
    pub fn new(eps: Vec<f64>, alpha: Vec<f64>, blocks: usize) -> Result<Self> {
        if eps.is_empty() || alpha.is_empty() {
            return Err(Error::Domain("grid needs at least one eps and one alpha".into()));
        }
        if let Some(e) = eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(Error::Domain(format!("eps values must be positive, got {e}")));
        }
        if eps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Domain("eps values must be strictly decreasing".into()));
        }
        if let Some(a) = alpha.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return Err(Error::Domain(format!("alpha values must lie in (0, 1), got {a}")));
        }
        if blocks == 0 {
            return Err(Error::Domain("block horizon must be at least 1".into()));
        }
        Ok(Self {
            eps,
            alpha,
            blocks,
            index_horizon: None,
        })
    }

    pub fn with_blocks(mut self, blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::Domain("block horizon must be at least 1".into()));
        }
        self.blocks = blocks;
        Ok(self)
    }

    pub fn with_index_horizon(mut self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("index horizon must be at least 1".into()));
        }
        self.index_horizon = Some(n);
        Ok(self)
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn index_horizon(&self) -> Option<u64> {
        self.index_horizon
    }

    /// `(eps, alpha)` pairs, eps-major.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.eps.iter().flat_map(move |&e| self.alpha.iter().map(move |&a| (e, a)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Nu,
    Theta,
    ITheta,
    ThetaCauchy,
    IThetaCauchy,
    IStarThetaCauchy,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Nu => "nu",
            Mode::Theta => "theta",
            Mode::ITheta => "i_theta",
            Mode::ThetaCauchy => "theta_cauchy",
            Mode::IThetaCauchy => "i_theta_cauchy",
            Mode::IStarThetaCauchy => "i_star_theta_cauchy",
        }
    }
}

/// One `(ε, α)` row of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPointResult {
    pub eps: f64,
    pub alpha: f64,
    pub verdict: Verdict,
    /// Block averages at this `ε`, `r = 1..=R`. Empty for pointwise checks.
    pub block_averages: Vec<f64>,
    /// Blocks (or indices, for pointwise checks) failing the `1 - α` threshold.
    pub offending: Vec<usize>,
    /// Reference index `m` used by Cauchy checks.
    pub reference: Option<u64>,
    /// Start of the certified tail (`r₀` or `m`).
    pub tail_start: Option<u64>,
}

impl GridPointResult {
    pub fn status(&self) -> Status {
        self.verdict.status
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub mode: Mode,
    pub target: Option<Point>,
    pub blocks: usize,
    pub index_horizon: u64,
    pub points: Vec<GridPointResult>,
    pub overall: Status,
}

impl ConvergenceReport {
    pub(crate) fn assemble(mode: Mode, target: Option<Point>, blocks: usize, index_horizon: u64, points: Vec<GridPointResult>) -> Self {
        let overall = Status::combine(points.iter().map(|p| p.status()));
        Self {
            mode,
            target,
            blocks,
            index_horizon,
            points,
            overall,
        }
    }

    pub fn point(&self, eps: f64, alpha: f64) -> Option<&GridPointResult> {
        self.points.iter().find(|p| p.eps == eps && p.alpha == alpha)
    }

    /// Union of offending sets over the grid.
    pub fn offending_anywhere(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.points.iter().flat_map(|p| p.offending.iter().copied()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// A sequence materialised over the first `R` blocks of a scheme.
pub(crate) struct Blocked {
    pub blocks: Vec<(u64, u64)>,
    pub prefix: Prefix,
    pub k_r: u64,
}

pub(crate) fn materialise(seq: &SequenceSource, space: &PnSpace, theta: &LacunaryScheme, horizon: usize) -> Result<Blocked> {
    if seq.dim() != space.dim() {
        return Err(Error::Shape(format!(
            "sequence has dimension {} but the space has {}",
            seq.dim(),
            space.dim()
        )));
    }
    theta.validate_horizon(horizon)?;
    let blocks = theta.blocks(horizon)?;
    let k_r = theta.k(horizon)?;
    let prefix = seq.prefix(k_r)?;
    Ok(Blocked { blocks, prefix, k_r })
}

/// θ-style tail test on an offending block list: holds when the offending
/// blocks end before some `r₀ <= R/2`, fails otherwise, inconclusive with
/// fewer than [`MIN_TAIL_BLOCKS`] blocks.
pub(crate) fn tail_verdict(offending: &[usize], horizon: usize, index_horizon: u64) -> (Verdict, Option<u64>) {
    let off = Evidence::OffendingBlocks {
        blocks: offending.to_vec(),
    };
    if horizon < MIN_TAIL_BLOCKS {
        return (Verdict::new(Status::Inconclusive, vec![off], index_horizon), None);
    }
    let r0 = offending.last().map_or(1, |&r| r + 1);
    if 2 * r0 <= horizon {
        let w = Evidence::Witness {
            description: format!("r0 = {r0}"),
        };
        (Verdict::new(Status::Holds, vec![off, w], index_horizon), Some(r0 as u64))
    } else {
        (Verdict::new(Status::Fails, vec![off], index_horizon), None)
    }
}

pub(crate) fn offending_blocks(avgs: &[f64], alpha: f64) -> Vec<usize> {
    (1..=avgs.len()).filter(|&r| avgs[r - 1] <= 1.0 - alpha).collect()
}

fn check_target(space: &PnSpace, target: &Point) -> Result<()> {
    space.check_point(target)
}

/// Pointwise convergence: `ν_{x_k - L}(ε) > 1 - α` for all `k >= m`.
///
/// Holds when the last violation up to `n` comes before some `m <= n/2`;
/// fails when violations occur in both the third and the last quarter of
/// `[1, n]`.
pub fn nu_convergence_check(seq: &SequenceSource, space: &PnSpace, limit: &Point, grid: &ParamGrid) -> Result<ConvergenceReport> {
    check_target(space, limit)?;
    if seq.dim() != space.dim() {
        return Err(Error::Shape("sequence and space dimensions differ".into()));
    }
    let n = grid.index_horizon.unwrap_or(ParamGrid::DEFAULT_INDEX_HORIZON);
    let prefix = seq.prefix(n)?;
    let profile = DistanceProfile::toward(&prefix, space, &limit.0);
    let mut points = Vec::new();
    for (eps, alpha) in grid.points() {
        let bad: Vec<u64> = (1..=n).filter(|&k| profile.nu(space, k, eps) <= 1.0 - alpha).collect();
        let last = bad.last().copied();
        let witness = Evidence::FiniteWitness { last_member: last, window: n };
        let m = last.map_or(1, |v| v + 1);
        let (status, tail_start) = if n < MIN_TAIL_BLOCKS as u64 {
            (Status::Inconclusive, None)
        } else if 2 * m <= n {
            (Status::Holds, Some(m))
        } else {
            let third = bad.iter().any(|&k| 2 * k > n && 4 * k <= 3 * n);
            let fourth = bad.iter().any(|&k| 4 * k > 3 * n);
            if third && fourth {
                (Status::Fails, None)
            } else {
                (Status::Inconclusive, None)
            }
        };
        points.push(GridPointResult {
            eps,
            alpha,
            verdict: Verdict::new(status, vec![witness], n),
            block_averages: vec![],
            offending: bad.iter().map(|&k| k as usize).collect(),
            reference: None,
            tail_start,
        });
    }
    Ok(ConvergenceReport::assemble(Mode::Nu, Some(limit.clone()), 0, n, points))
}

/// Block averages toward `limit` for each `ε` in the grid.
fn averages_per_eps(b: &Blocked, space: &PnSpace, limit: &Point, grid: &ParamGrid) -> Vec<Vec<f64>> {
    let profile = DistanceProfile::toward(&b.prefix, space, &limit.0);
    grid.eps
        .iter()
        .map(|&e| profile.block_averages(space, &b.blocks, e))
        .collect()
}

/// θ-convergence: block averages of `ν_{x_k - L}(ε)` exceed `1 - α` from some
/// `r₀ <= R/2` on.
pub fn theta_convergence_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    limit: &Point,
    grid: &ParamGrid,
) -> Result<ConvergenceReport> {
    check_target(space, limit)?;
    let b = materialise(seq, space, theta, grid.blocks)?;
    let avgs = averages_per_eps(&b, space, limit, grid);
    let mut points = Vec::new();
    for (i, &eps) in grid.eps.iter().enumerate() {
        for &alpha in &grid.alpha {
            let offending = offending_blocks(&avgs[i], alpha);
            let (verdict, r0) = tail_verdict(&offending, grid.blocks, b.k_r);
            points.push(GridPointResult {
                eps,
                alpha,
                verdict,
                block_averages: avgs[i].clone(),
                offending,
                reference: None,
                tail_start: r0,
            });
        }
    }
    Ok(ConvergenceReport::assemble(Mode::Theta, Some(limit.clone()), grid.blocks, b.k_r, points))
}

/// Ideal lacunary convergence: the offending block set is in the ideal.
pub fn i_theta_convergence_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    limit: &Point,
    grid: &ParamGrid,
) -> Result<ConvergenceReport> {
    check_target(space, limit)?;
    let b = materialise(seq, space, theta, grid.blocks)?;
    let avgs = averages_per_eps(&b, space, limit, grid);
    let mut points = Vec::new();
    for (i, &eps) in grid.eps.iter().enumerate() {
        for &alpha in &grid.alpha {
            let offending = offending_blocks(&avgs[i], alpha);
            let verdict = oracle
                .ideal_contains(&IndexSet::blocks(&offending, grid.blocks))
                .with_evidence(Evidence::OffendingBlocks {
                    blocks: offending.clone(),
                });
            points.push(GridPointResult {
                eps,
                alpha,
                verdict,
                block_averages: avgs[i].clone(),
                offending,
                reference: None,
                tail_start: None,
            });
        }
    }
    Ok(ConvergenceReport::assemble(Mode::ITheta, Some(limit.clone()), grid.blocks, b.k_r, points))
}

/// The three equivalent forms of ideal lacunary convergence at one `(ε, α)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalentForms {
    pub eps: f64,
    pub alpha: f64,
    /// Offending block set in the ideal.
    pub offending_in_ideal: Verdict,
    /// Good block set in the filter.
    pub good_in_filter: Verdict,
    /// Ideal lacunary limit of the real sequence `k ↦ ν_{x_k - L}(ε)` is 1.
    pub real_limit_is_one: Verdict,
    /// No two definite statuses disagree.
    pub consistent: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn equivalent_forms_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    limit: &Point,
    eps: f64,
    alpha: f64,
    horizon: usize,
) -> Result<EquivalentForms> {
    let grid = ParamGrid::new(vec![eps], vec![alpha], horizon)?;
    check_target(space, limit)?;
    let b = materialise(seq, space, theta, horizon)?;
    let avgs = &averages_per_eps(&b, space, limit, &grid)[0];
    let offending = offending_blocks(avgs, alpha);
    let o = IndexSet::blocks(&offending, horizon);
    let ii = oracle.ideal_contains(&o);
    let iii = oracle.filter_contains(&o.complement());

    let prefix = b.prefix.clone();
    let (sp, target, s) = (space.clone(), limit.0.clone(), seq.clone());
    let u = RealSequence::new("nu toward limit", move |k| {
        if k <= prefix.len() {
            sp.nu_diff(prefix.get(k), &target, eps)
        } else {
            sp.nu_diff(&s.at(k).0, &target, eps)
        }
    });
    let iv = real_i_theta_check(&u, 1.0, theta, alpha, oracle, horizon)?;

    let definite: Vec<Status> = [ii.status, iii.status, iv.status]
        .into_iter()
        .filter(|s| *s != Status::Inconclusive)
        .collect();
    let consistent = definite.windows(2).all(|w| w[0] == w[1]);
    Ok(EquivalentForms {
        eps,
        alpha,
        offending_in_ideal: ii,
        good_in_filter: iii,
        real_limit_is_one: iv,
        consistent,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitScan {
    pub accepted: Vec<Point>,
    pub reports: Vec<ConvergenceReport>,
}

pub(crate) fn check_distinct(candidates: &[Point], space: &PnSpace) -> Result<()> {
    for (i, c) in candidates.iter().enumerate() {
        space.check_point(c)?;
        if candidates[..i].contains(c) {
            return Err(Error::Domain(format!("candidate {c} appears twice")));
        }
    }
    Ok(())
}

/// Candidates whose ideal lacunary check holds overall.
pub fn limit_scan(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    candidates: &[Point],
    grid: &ParamGrid,
) -> Result<LimitScan> {
    check_distinct(candidates, space)?;
    let mut accepted = Vec::new();
    let mut reports = Vec::new();
    for c in candidates {
        let rep = i_theta_convergence_check(seq, space, theta, oracle, c, grid)?;
        if rep.overall == Status::Holds {
            accepted.push(c.clone());
        }
        reports.push(rep);
    }
    Ok(LimitScan { accepted, reports })
}

/// `k ↦ a·x_k + b·y_k`.
pub fn seq_combine(a: f64, x: &SequenceSource, b: f64, y: &SequenceSource) -> Result<SequenceSource> {
    if x.dim() != y.dim() {
        return Err(Error::Shape(format!(
            "cannot combine sequences of dimension {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("coefficients must be finite".into()));
    }
    let (x, y) = (x.clone(), y.clone());
    let label = format!("{a}·({}) + {b}·({})", x.label(), y.label());
    Ok(SequenceSource::new(label, x.dim(), move |k| {
        let (p, q) = (x.at(k), y.at(k));
        Point(p.0.iter().zip(&q.0).map(|(u, v)| a * u + b * v).collect())
    }))
}

/// One index per block, chosen to maximise `ν_{x_k - L}(ε)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subsequence {
    pub indices: Vec<u64>,
    /// `ν_{x_{m_r} - L}(ε)` at each selected index.
    pub nu: Vec<f64>,
    pub block_averages: Vec<f64>,
}

/// Per-block argmax, ties to the smallest index.
pub(crate) fn argmax_blocks(profile: &DistanceProfile, space: &PnSpace, blocks: &[(u64, u64)], eps: f64) -> (Vec<u64>, Vec<f64>) {
    blocks
        .iter()
        .map(|&(lo, hi)| {
            let mut best = (lo + 1, profile.nu(space, lo + 1, eps));
            for k in lo + 2..=hi {
                let v = profile.nu(space, k, eps);
                if v > best.1 {
                    best = (k, v);
                }
            }
            best
        })
        .unzip()
}

pub fn extract_convergent_subsequence(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    limit: &Point,
    eps: f64,
    horizon: usize,
) -> Result<Subsequence> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    check_target(space, limit)?;
    let b = materialise(seq, space, theta, horizon)?;
    let profile = DistanceProfile::toward(&b.prefix, space, &limit.0);
    let (indices, nu) = argmax_blocks(&profile, space, &b.blocks, eps);
    Ok(Subsequence {
        indices,
        nu,
        block_averages: profile.block_averages(space, &b.blocks, eps),
    })
}
