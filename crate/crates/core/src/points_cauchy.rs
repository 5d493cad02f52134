//! Ideal lacunary limit and cluster points, decomposition, modification on
//! small sets, and the lacunary Cauchy conditions.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{Evidence, Ideal, IndexSet, Status, Verdict};
use crate::lacunary::{DistanceProfile, LacunaryScheme, Prefix, SequenceSource};
use crate::pn_convergence::{
    argmax_blocks, check_distinct, materialise, offending_blocks, tail_verdict, ConvergenceReport, GridPointResult, Mode,
    ParamGrid,
};
use crate::pn_space::{Point, PnSpace};

/// Acceptance of one candidate at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEvidence {
    pub eps: f64,
    pub alpha: f64,
    /// `Holds` when this grid point supports accepting the candidate.
    pub status: Status,
    pub oracle: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateEvidence {
    pub candidate: Point,
    pub accepted: bool,
    pub points: Vec<PointEvidence>,
    /// Block set `M'` touched by the witness subsequence (limit-point scan).
    pub touched_blocks: Vec<usize>,
    /// Witness subsequence indices per `ε` (limit-point scan).
    pub subsequences: Vec<(f64, Vec<u64>)>,
}

/// Candidate points and the subset accepted by a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSetEstimate {
    pub candidates: Vec<Point>,
    pub accepted: Vec<usize>,
    pub evidence: Vec<CandidateEvidence>,
}

impl PointSetEstimate {
    pub fn accepted_points(&self) -> Vec<&Point> {
        self.accepted.iter().map(|&i| &self.candidates[i]).collect()
    }

    pub fn accepts(&self, p: &Point) -> bool {
        self.accepted_points().contains(&p)
    }
}

/// Cluster points: `L` is accepted when the good block set
/// `{r : average > 1 - α}` is outside the ideal at every grid point.
pub fn cluster_points_scan(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    candidates: &[Point],
    grid: &ParamGrid,
) -> Result<PointSetEstimate> {
    check_distinct(candidates, space)?;
    let b = materialise(seq, space, theta, grid.blocks())?;
    let mut out = PointSetEstimate {
        candidates: candidates.to_vec(),
        accepted: vec![],
        evidence: vec![],
    };
    for (ci, c) in candidates.iter().enumerate() {
        let profile = DistanceProfile::toward(&b.prefix, space, &c.0);
        let mut points = Vec::new();
        for &eps in grid.eps() {
            let avgs = profile.block_averages(space, &b.blocks, eps);
            for &alpha in grid.alpha() {
                let good: Vec<usize> = (1..=avgs.len()).filter(|&r| avgs[r - 1] > 1.0 - alpha).collect();
                let v = oracle
                    .ideal_contains(&IndexSet::blocks(&good, grid.blocks()))
                    .with_evidence(Evidence::Witness {
                        description: format!("good blocks {good:?}"),
                    });
                points.push(PointEvidence {
                    eps,
                    alpha,
                    status: flip(v.status),
                    oracle: v,
                });
            }
        }
        let accepted = points.iter().all(|p| p.status == Status::Holds);
        if accepted {
            out.accepted.push(ci);
        }
        out.evidence.push(CandidateEvidence {
            candidate: c.clone(),
            accepted,
            points,
            touched_blocks: vec![],
            subsequences: vec![],
        });
    }
    Ok(out)
}

fn flip(s: Status) -> Status {
    match s {
        Status::Holds => Status::Fails,
        Status::Fails => Status::Holds,
        Status::Inconclusive => Status::Inconclusive,
    }
}

/// Limit points: `L` is accepted when the per-block argmax subsequence
/// toward `L` stays above `1 - α` from some `r₀ <= R/2` on at every grid
/// point, and its block set (every block) is outside the ideal.
pub fn limit_points_scan(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    candidates: &[Point],
    grid: &ParamGrid,
) -> Result<PointSetEstimate> {
    check_distinct(candidates, space)?;
    let r = grid.blocks();
    let b = materialise(seq, space, theta, r)?;
    let touched: Vec<usize> = (1..=r).collect();
    let m_prime = oracle.ideal_contains(&IndexSet::blocks(&touched, r));
    let mut out = PointSetEstimate {
        candidates: candidates.to_vec(),
        accepted: vec![],
        evidence: vec![],
    };
    for (ci, c) in candidates.iter().enumerate() {
        let profile = DistanceProfile::toward(&b.prefix, space, &c.0);
        let mut points = Vec::new();
        let mut subsequences = Vec::new();
        for &eps in grid.eps() {
            let (idx, nu) = argmax_blocks(&profile, space, &b.blocks, eps);
            for &alpha in grid.alpha() {
                let offending = offending_blocks(&nu, alpha);
                let (tail, _) = tail_verdict(&offending, r, b.k_r);
                let status = Status::combine([tail.status, flip(m_prime.status)]);
                points.push(PointEvidence {
                    eps,
                    alpha,
                    status,
                    oracle: m_prime.clone(),
                });
            }
            subsequences.push((eps, idx));
        }
        let accepted = points.iter().all(|p| p.status == Status::Holds);
        if accepted {
            out.accepted.push(ci);
        }
        out.evidence.push(CandidateEvidence {
            candidate: c.clone(),
            accepted,
            points,
            touched_blocks: touched.clone(),
            subsequences,
        });
    }
    Ok(out)
}

/// `x_k - L`, nudged by a few ulps so that `L + z == x_k` in floating point
/// whenever such a `z` exists nearby. When `x_k` was itself computed as
/// `L + w` this always succeeds; otherwise the rounded difference is kept.
fn exact_difference(x: f64, l: f64) -> f64 {
    let z = x - l;
    if l + z == x {
        return z;
    }
    let (mut up, mut down) = (z, z);
    for _ in 0..8 {
        up = up.next_up();
        down = down.next_down();
        if l + up == x {
            return up;
        }
        if l + down == x {
            return down;
        }
    }
    z
}

/// Splits `x` into `y + z` with `y = x`, `z = 0` on blocks in `m_prime` and
/// `y = L`, `z = x - L` elsewhere (including beyond the horizon).
pub fn decompose(
    seq: &SequenceSource,
    m_prime: &[usize],
    limit: &Point,
    theta: &LacunaryScheme,
    horizon: usize,
) -> Result<(SequenceSource, SequenceSource)> {
    if limit.dim() != seq.dim() {
        return Err(Error::Shape("limit and sequence dimensions differ".into()));
    }
    if let Some(&r) = m_prime.iter().find(|&&r| r == 0 || r > horizon) {
        return Err(Error::Domain(format!("block {r} outside [1, {horizon}]")));
    }
    theta.validate_horizon(horizon)?;
    let ks: Vec<u64> = (0..=horizon).map(|r| theta.k(r)).collect::<Result<_>>()?;
    let mut inside = vec![false; horizon + 1];
    for &r in m_prime {
        inside[r] = true;
    }
    let in_m = move |k: u64| -> bool {
        let r = ks.partition_point(|&kr| kr < k);
        r <= horizon && inside[r]
    };
    let in_m2 = in_m.clone();
    let (x1, x2) = (seq.clone(), seq.clone());
    let (l1, l2) = (limit.clone(), limit.clone());
    let dim = seq.dim();
    let y = SequenceSource::new(format!("y from {}", seq.label()), dim, move |k| {
        if in_m(k) {
            x1.at(k)
        } else {
            l1.clone()
        }
    });
    let z = SequenceSource::new(format!("z from {}", seq.label()), dim, move |k| {
        if in_m2(k) {
            Point::zero(dim)
        } else {
            let x = x2.at(k);
            Point(x.0.iter().zip(&l2.0).map(|(&a, &b)| exact_difference(a, b)).collect())
        }
    });
    Ok((y, z))
}

/// `x` with its terms on `set` replaced by those of `y`. Indices beyond a
/// bounded set's horizon are left alone.
pub fn modify_on_null_set(x: &SequenceSource, y: &SequenceSource, set: IndexSet) -> Result<SequenceSource> {
    if x.dim() != y.dim() {
        return Err(Error::Shape("replacement values have the wrong dimension".into()));
    }
    let (x, y) = (x.clone(), y.clone());
    let label = format!("{} modified on {set:?}", x.label());
    Ok(SequenceSource::new(label, x.dim(), move |k| {
        if set.contains(k) == Some(true) {
            y.at(k)
        } else {
            x.at(k)
        }
    }))
}

/// `{r <= horizon : J_r ∩ set ≠ ∅}`.
pub fn touched_blocks(set: &IndexSet, theta: &LacunaryScheme, horizon: usize) -> Result<IndexSet> {
    let mut hit = Vec::new();
    for r in 1..=horizon {
        let (lo, hi) = theta.block_range(r)?;
        if (lo + 1..=hi).any(|k| set.contains(k) == Some(true)) {
            hit.push(r);
        }
    }
    Ok(IndexSet::blocks(&hit, horizon))
}

/// How reference indices `m` are chosen for the Cauchy checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum MStrategy {
    /// The first index close to most of the final block, the median index
    /// and the last index of the first block.
    Default,
    Fixed(Vec<u64>),
}

const FINAL_BLOCK_SAMPLES: u64 = 64;
const FIRST_SCAN_LIMIT: u64 = 4096;

/// First `k` with `ν_{x_k - x_j}(ε) > 1 - α/2` for most sampled `j` in the
/// final block.
fn first_settled_index(prefix: &Prefix, space: &PnSpace, blocks: &[(u64, u64)], eps: f64, alpha: f64) -> Option<u64> {
    let &(lo, hi) = blocks.last()?;
    let step = ((hi - lo) / FINAL_BLOCK_SAMPLES).max(1);
    let samples: Vec<u64> = (lo + 1..=hi).step_by(step as usize).take(FINAL_BLOCK_SAMPLES as usize).collect();
    let upper = blocks[(blocks.len() / 2).saturating_sub(1)].1.min(FIRST_SCAN_LIMIT);
    (1..=upper).find(|&k| {
        let close = samples
            .iter()
            .filter(|&&j| space.nu_diff(prefix.get(k), prefix.get(j), eps) > 1.0 - alpha / 2.0)
            .count();
        2 * close > samples.len()
    })
}

fn reference_candidates(
    strategy: &MStrategy,
    prefix: &Prefix,
    space: &PnSpace,
    blocks: &[(u64, u64)],
    eps: f64,
    alpha: f64,
) -> Result<Vec<u64>> {
    let n = prefix.len();
    let mut ms = match strategy {
        MStrategy::Fixed(ms) => {
            if ms.is_empty() {
                return Err(Error::Domain("no reference indices given".into()));
            }
            if let Some(&m) = ms.iter().find(|&&m| m == 0 || m > n) {
                return Err(Error::Domain(format!("reference index {m} outside [1, {n}]")));
            }
            ms.clone()
        }
        MStrategy::Default => {
            let mut v = Vec::new();
            v.extend(first_settled_index(prefix, space, blocks, eps, alpha));
            v.push((n / 2).max(1));
            v.push(blocks[0].1);
            v
        }
    };
    let mut seen = std::collections::HashSet::new();
    ms.retain(|m| seen.insert(*m));
    Ok(ms)
}

/// Runs a Cauchy-type judgement over the grid, trying reference indices
/// until one holds.
fn cauchy_rows(
    prefix: &Prefix,
    space: &PnSpace,
    blocks: &[(u64, u64)],
    grid: &ParamGrid,
    strategy: &MStrategy,
    judge: &dyn Fn(&[usize]) -> (Verdict, Option<u64>),
) -> Result<Vec<GridPointResult>> {
    let mut profiles: HashMap<u64, DistanceProfile> = HashMap::new();
    let mut averages: HashMap<(u64, usize), Vec<f64>> = HashMap::new();
    let mut rows = Vec::new();
    for (ei, &eps) in grid.eps().iter().enumerate() {
        for &alpha in grid.alpha() {
            let ms = reference_candidates(strategy, prefix, space, blocks, eps, alpha)?;
            let mut best: Option<(Status, GridPointResult)> = None;
            let mut all_fail = true;
            for m in ms {
                let avgs = averages
                    .entry((m, ei))
                    .or_insert_with(|| {
                        let p = profiles
                            .entry(m)
                            .or_insert_with(|| DistanceProfile::toward(prefix, space, prefix.get(m)));
                        p.block_averages(space, blocks, eps)
                    })
                    .clone();
                let offending = offending_blocks(&avgs, alpha);
                let (verdict, tail) = judge(&offending);
                let status = verdict.status;
                all_fail &= status == Status::Fails;
                let row = GridPointResult {
                    eps,
                    alpha,
                    verdict: verdict.with_evidence(Evidence::Witness {
                        description: format!("m = {m}"),
                    }),
                    block_averages: avgs,
                    offending,
                    reference: Some(m),
                    tail_start: tail,
                };
                let rank = |s: Status| match s {
                    Status::Holds => 0,
                    Status::Inconclusive => 1,
                    Status::Fails => 2,
                };
                if best.as_ref().is_none_or(|(s, _)| rank(status) < rank(*s)) {
                    best = Some((status, row));
                }
                if status == Status::Holds {
                    break;
                }
            }
            let (_, mut row) = best.expect("at least one reference index");
            if !all_fail && row.verdict.status == Status::Fails {
                row.verdict.status = Status::Inconclusive;
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Lacunary Cauchy: for some `m`, block averages of `ν_{x_k - x_m}(ε)` exceed
/// `1 - α` from some `r₀ <= R/2` on.
pub fn theta_cauchy_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    grid: &ParamGrid,
    strategy: &MStrategy,
) -> Result<ConvergenceReport> {
    let b = materialise(seq, space, theta, grid.blocks())?;
    let r = grid.blocks();
    let judge = |off: &[usize]| tail_verdict(off, r, b.k_r);
    let rows = cauchy_rows(&b.prefix, space, &b.blocks, grid, strategy, &judge)?;
    Ok(ConvergenceReport::assemble(Mode::ThetaCauchy, None, r, b.k_r, rows))
}

/// Ideal lacunary Cauchy: for some `m`, the good block set is in the filter.
pub fn i_theta_cauchy_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    grid: &ParamGrid,
    strategy: &MStrategy,
) -> Result<ConvergenceReport> {
    let b = materialise(seq, space, theta, grid.blocks())?;
    let r = grid.blocks();
    let judge = |off: &[usize]| {
        let good = IndexSet::blocks(off, r).complement();
        (oracle.filter_contains(&good), None)
    };
    let rows = cauchy_rows(&b.prefix, space, &b.blocks, grid, strategy, &judge)?;
    Ok(ConvergenceReport::assemble(Mode::IThetaCauchy, None, r, b.k_r, rows))
}

/// Starred ideal lacunary Cauchy along `M = {m_1 < m_2 < ...}`.
///
/// Holds when the block set touched by `M` is in the filter and the
/// subsequence `(x_{m_j})` is lacunary Cauchy along the blocks it inherits.
/// Without `M`, the first index of each block is used.
pub fn i_star_theta_cauchy_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    oracle: &dyn Ideal,
    grid: &ParamGrid,
    m: Option<&[u64]>,
) -> Result<ConvergenceReport> {
    let r = grid.blocks();
    let b = materialise(seq, space, theta, r)?;
    let ms: Vec<u64> = match m {
        Some(ms) => {
            if ms.is_empty() {
                return Err(Error::Domain("M must not be empty".into()));
            }
            if ms[0] == 0 || ms.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Domain("M must be strictly increasing positive indices".into()));
            }
            ms.iter().copied().filter(|&k| k <= b.k_r).collect()
        }
        None => b.blocks.iter().map(|&(lo, _)| lo + 1).collect(),
    };

    let mut induced = Vec::new();
    let mut touched = Vec::new();
    let mut j = 0usize;
    for (ri, &(lo, hi)) in b.blocks.iter().enumerate() {
        let start = j;
        while j < ms.len() && ms[j] <= hi {
            debug_assert!(ms[j] > lo);
            j += 1;
        }
        if j > start {
            touched.push(ri + 1);
            induced.push((start as u64, j as u64));
        }
    }
    let filter = oracle.filter_contains(&IndexSet::blocks(&touched, r));

    let mut data = Vec::with_capacity(ms.len() * seq.dim());
    for &k in &ms {
        data.extend_from_slice(b.prefix.get(k));
    }
    let rows = if induced.is_empty() {
        grid.points()
            .map(|(eps, alpha)| GridPointResult {
                eps,
                alpha,
                verdict: Verdict::new(Status::Inconclusive, vec![], b.k_r),
                block_averages: vec![],
                offending: vec![],
                reference: None,
                tail_start: None,
            })
            .collect()
    } else {
        let sub = Prefix::from_flat(seq.dim(), data)?;
        let nb = induced.len();
        let judge = |off: &[usize]| tail_verdict(off, nb, b.k_r);
        cauchy_rows(&sub, space, &induced, grid, &MStrategy::Default, &judge)?
    };

    let rows = rows
        .into_iter()
        .map(|mut row| {
            row.reference = row.reference.map(|jm| ms[jm as usize - 1]);
            let status = Status::combine([filter.status, row.verdict.status]);
            let mut evidence = filter.evidence.clone();
            evidence.push(Evidence::Witness {
                description: format!("touched blocks {touched:?}"),
            });
            evidence.extend(row.verdict.evidence);
            row.verdict = Verdict::new(status, evidence, b.k_r);
            row
        })
        .collect();
    Ok(ConvergenceReport::assemble(Mode::IStarThetaCauchy, None, r, b.k_r, rows))
}

/// Ordinary Cauchy test along the per-block argmax of `ν_{x_k - x_m}(ε)`:
/// every selected term from block `r0` on satisfies `ν > 1 - α`.
#[allow(clippy::too_many_arguments)]
pub fn argmax_cauchy_tail_check(
    seq: &SequenceSource,
    space: &PnSpace,
    theta: &LacunaryScheme,
    m: u64,
    eps: f64,
    alpha: f64,
    r0: usize,
    horizon: usize,
) -> Result<Verdict> {
    let b = materialise(seq, space, theta, horizon)?;
    if m == 0 || m > b.k_r {
        return Err(Error::Domain(format!("reference index {m} outside [1, {}]", b.k_r)));
    }
    if r0 == 0 || r0 > horizon {
        return Err(Error::Domain(format!("tail start {r0} outside [1, {horizon}]")));
    }
    let profile = DistanceProfile::toward(&b.prefix, space, b.prefix.get(m));
    let (idx, nu) = argmax_blocks(&profile, space, &b.blocks, eps);
    let bad: Vec<usize> = (r0..=horizon).filter(|&r| nu[r - 1] <= 1.0 - alpha).collect();
    let status = if bad.is_empty() { Status::Holds } else { Status::Fails };
    Ok(Verdict::new(
        status,
        vec![
            Evidence::OffendingBlocks { blocks: bad },
            Evidence::Witness {
                description: format!("selected indices {idx:?}"),
            },
        ],
        b.k_r,
    ))
}
