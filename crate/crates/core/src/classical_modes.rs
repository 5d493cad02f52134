//! Convergence modes for real sequences: statistical, ideal, `N_θ` and
//! lacunary ideal convergence.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideals::{Evidence, Ideal, IdealOracle, IndexSet, Status, Verdict};
use crate::lacunary::LacunaryScheme;

/// Fewest blocks on which a tail check will commit to an answer.
pub const MIN_TAIL_BLOCKS: usize = 4;

/// A deterministic real sequence `k ↦ x_k`, `k >= 1`.
#[derive(Clone)]
pub struct RealSequence {
    label: String,
    f: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl fmt::Debug for RealSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealSequence({})", self.label)
    }
}

impl RealSequence {
    pub fn new(label: impl Into<String>, f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("constant {c}"), move |_| c)
    }

    pub fn indicator_of_squares() -> Self {
        Self::new("indicator of squares", |k| {
            if crate::lacunary::is_square(k) {
                1.0
            } else {
                0.0
            }
        })
    }

    pub fn alternating() -> Self {
        Self::new("alternating", |k| if k % 2 == 0 { 1.0 } else { -1.0 })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn at(&self, k: u64) -> f64 {
        (self.f)(k)
    }

    /// `{k : |x_k - limit| >= eps}`.
    pub fn exceedance_set(&self, limit: f64, eps: f64) -> IndexSet {
        let f = Arc::clone(&self.f);
        IndexSet::predicate(format!("|{} - {limit}| >= {eps}", self.label), move |k| (f(k) - limit).abs() >= eps)
    }

    /// Block means of `|x_k - limit|` for `r = 1..=horizon`.
    pub fn block_means(&self, limit: f64, theta: &LacunaryScheme, horizon: usize) -> Result<Vec<f64>> {
        theta.validate_horizon(horizon)?;
        Ok(theta
            .blocks(horizon)?
            .into_iter()
            .map(|(lo, hi)| {
                let s: f64 = (lo + 1..=hi).map(|k| (self.at(k) - limit).abs()).sum();
                s / (hi - lo) as f64
            })
            .collect())
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be a positive real, got {v}")))
    }
}

/// `{k : |x_k - L| >= eps} ∈ I`.
pub fn real_i_convergence_check(x: &RealSequence, limit: f64, eps: f64, oracle: &dyn Ideal) -> Result<Verdict> {
    positive("eps", eps)?;
    Ok(oracle.ideal_contains(&x.exceedance_set(limit, eps)))
}

/// Statistical convergence: the ideal check with the density oracle.
pub fn statistical_convergence_check(x: &RealSequence, limit: f64, eps: f64, oracle: &IdealOracle) -> Result<Verdict> {
    if !oracle.is_density() {
        return Err(Error::Domain("statistical convergence needs the density oracle".into()));
    }
    real_i_convergence_check(x, limit, eps, oracle)
}

/// `lim_r (1/h_r) Σ_{J_r} |x_k - L| = 0`, judged on the final half of
/// `[1, horizon]`.
///
/// Holds when every tail mean is below `tol` and the tail is non-increasing;
/// fails when every tail mean is at least `tol`.
pub fn n_theta_check(x: &RealSequence, limit: f64, theta: &LacunaryScheme, tol: f64, horizon: usize) -> Result<Verdict> {
    positive("tol", tol)?;
    let means = x.block_means(limit, theta, horizon)?;
    let k_r = theta.k(horizon)?;
    if horizon < MIN_TAIL_BLOCKS {
        return Ok(Verdict::new(Status::Inconclusive, vec![], k_r));
    }
    let start = horizon / 2;
    let tail = &means[start..];
    let above: Vec<usize> = (start..horizon).filter(|&i| means[i] >= tol).map(|i| i + 1).collect();
    let evidence = vec![
        Evidence::OffendingBlocks { blocks: above.clone() },
        Evidence::Witness {
            description: format!("tail block means {tail:?}"),
        },
    ];
    let status = if above.is_empty() && tail.windows(2).all(|w| w[1] <= w[0]) {
        Status::Holds
    } else if above.len() == tail.len() {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    Ok(Verdict::new(status, evidence, k_r))
}

/// `{r <= horizon : (1/h_r) Σ_{J_r} |x_k - L| >= eps} ∈ I`.
pub fn real_i_theta_check(
    x: &RealSequence,
    limit: f64,
    theta: &LacunaryScheme,
    eps: f64,
    oracle: &dyn Ideal,
    horizon: usize,
) -> Result<Verdict> {
    positive("eps", eps)?;
    let means = x.block_means(limit, theta, horizon)?;
    let offending: Vec<usize> = (1..=horizon).filter(|&r| means[r - 1] >= eps).collect();
    let set = IndexSet::blocks(&offending, horizon);
    Ok(oracle
        .ideal_contains(&set)
        .with_evidence(Evidence::OffendingBlocks { blocks: offending }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> LacunaryScheme {
        LacunaryScheme::geometric(2.0).unwrap()
    }

    #[test]
    fn statistical_examples() {
        let o = IdealOracle::density();
        let sq = statistical_convergence_check(&RealSequence::indicator_of_squares(), 0.0, 0.5, &o).unwrap();
        assert_eq!(sq.status, Status::Holds);
        for eps in [0.01, 1.0, 10.0] {
            let c = statistical_convergence_check(&RealSequence::constant(3.0), 3.0, eps, &o).unwrap();
            assert_eq!(c.status, Status::Holds);
        }
        let alt = statistical_convergence_check(&RealSequence::alternating(), 1.0, 0.5, &o).unwrap();
        assert_eq!(alt.status, Status::Fails);
        assert!(statistical_convergence_check(&RealSequence::alternating(), 1.0, 0.5, &IdealOracle::finite(10)).is_err());
        assert!(real_i_convergence_check(&RealSequence::alternating(), 1.0, 0.0, &o).is_err());
    }

    #[test]
    fn ideal_examples() {
        let o = IdealOracle::density();
        let x = RealSequence::indicator_of_squares();
        let a = statistical_convergence_check(&x, 0.0, 0.5, &o).unwrap();
        let b = real_i_convergence_check(&x, 0.0, 0.5, &o).unwrap();
        assert_eq!(a, b);

        let fin = IdealOracle::finite(100_000);
        let recip = RealSequence::new("1/k", |k| 1.0 / k as f64);
        for eps in [1.0, 0.1, 0.001] {
            assert!(real_i_convergence_check(&recip, 0.0, eps, &fin).unwrap().holds());
        }
        let sq = real_i_convergence_check(&x, 0.0, 0.5, &fin).unwrap();
        assert_ne!(sq.status, Status::Holds);
    }

    #[test]
    fn n_theta_examples() {
        let t = theta();
        assert!(n_theta_check(&RealSequence::constant(2.0), 2.0, &t, 0.01, 20).unwrap().holds());
        assert!(n_theta_check(&RealSequence::indicator_of_squares(), 0.0, &t, 0.05, 20).unwrap().holds());
        assert!(n_theta_check(&RealSequence::constant(1.0), 0.0, &t, 0.01, 20).unwrap().fails());
        assert_eq!(
            n_theta_check(&RealSequence::constant(1.0), 0.0, &t, 0.01, 3).unwrap().status,
            Status::Inconclusive
        );
    }

    #[test]
    fn real_i_theta_examples() {
        let t = theta();
        let o = IdealOracle::density();
        let sq = real_i_theta_check(&RealSequence::indicator_of_squares(), 0.0, &t, 0.1, &o, 20).unwrap();
        assert!(sq.holds());
        assert!(real_i_theta_check(&RealSequence::constant(5.0), 5.0, &t, 0.1, &o, 20).unwrap().holds());
        assert!(real_i_theta_check(&RealSequence::constant(1.0), 0.0, &t, 0.5, &o, 20).unwrap().fails());
    }

    #[test]
    fn n_theta_implies_i_theta() {
        let t = theta();
        let x = RealSequence::indicator_of_squares();
        let tol = 0.05;
        assert!(n_theta_check(&x, 0.0, &t, tol, 20).unwrap().holds());
        for eps in [tol, 0.1, 0.5] {
            for o in [IdealOracle::density(), IdealOracle::finite(100)] {
                assert!(real_i_theta_check(&x, 0.0, &t, eps, &o, 20).unwrap().holds());
            }
        }
    }
}
