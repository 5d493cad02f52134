use serde::Serialize;

use super::{
    CheckMode, GridDescriptor, MuDescriptor, MuForm, NormName, OutputSpec, PointValue, Scenario, SequenceDescriptor,
    SequenceKind, SpaceDescriptor, TNormName, TaskDescriptor,
};
use crate::error::{Error, Result};
use crate::ideals::{IdealOracle, OracleDescriptor, Status};
use crate::lacunary::{LacunaryScheme, SchemeDescriptor, SequenceSource};
use crate::pn_convergence::{i_theta_convergence_check, ConvergenceReport, ParamGrid};
use crate::pn_space::{Point, PnSpace};

/// The squares indicator on the real line with `ν_x(t) = t / (t + |x|)`,
/// product t-norm, `k_r = 2^r`, the density ideal and the default grid.
pub fn squares_indicator_scenario(limit: f64) -> Scenario {
    Scenario {
        name: Some("squares indicator".into()),
        space: SpaceDescriptor {
            dim: 1,
            mu: MuDescriptor {
                form: MuForm::Rational,
                params: Default::default(),
            },
            tnorm: TNormName::Product,
            norm: NormName::Euclidean,
        },
        scheme: SchemeDescriptor::Geometric {
            rho: 2.0,
            c: 1.0,
            monotone_from: 1,
        },
        oracle: Some(OracleDescriptor::Density {
            horizon: IdealOracle::DEFAULT_HORIZON,
            tol: IdealOracle::DEFAULT_TOL,
            checkpoints: 3,
        }),
        sequence: SequenceDescriptor {
            kind: SequenceKind::IndicatorOfSquares,
            params: Default::default(),
        },
        task: TaskDescriptor::Check {
            mode: CheckMode::ITheta,
            limit: PointValue::Scalar(limit),
            grid: GridDescriptor::default(),
        },
        horizon_blocks: Some(20),
        output: OutputSpec::default(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquaresIndicatorRun {
    pub at_zero: ConvergenceReport,
    pub at_one: ConvergenceReport,
    pub finite_ideal_at_zero: ConvergenceReport,
}

/// Runs the squares-indicator instance and checks that 0 is the limit and 1
/// is not.
pub fn reproduce_squares_indicator() -> Result<SquaresIndicatorRun> {
    let space = PnSpace::real_line();
    let theta = LacunaryScheme::geometric(2.0)?;
    let seq = SequenceSource::indicator_of_squares();
    let grid = ParamGrid::default();
    let density = IdealOracle::density();
    let at_zero = i_theta_convergence_check(&seq, &space, &theta, &density, &Point::scalar(0.0), &grid)?;
    let at_one = i_theta_convergence_check(&seq, &space, &theta, &density, &Point::scalar(1.0), &grid)?;
    let finite = IdealOracle::finite(100_000);
    let finite_ideal_at_zero = i_theta_convergence_check(&seq, &space, &theta, &finite, &Point::scalar(0.0), &grid)?;
    let expect = |rep: &ConvergenceReport, want: Status, what: &str| {
        if rep.overall == want {
            Ok(())
        } else {
            Err(Error::Domain(format!("{what}: expected {want}, got {}", rep.overall)))
        }
    };
    expect(&at_zero, Status::Holds, "L = 0")?;
    expect(&at_one, Status::Fails, "L = 1")?;
    expect(&finite_ideal_at_zero, Status::Holds, "L = 0 with the finite ideal")?;
    Ok(SquaresIndicatorRun {
        at_zero,
        at_one,
        finite_ideal_at_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{run_parsed, RunOptions};

    #[test]
    fn reproduction() {
        let r = reproduce_squares_indicator().unwrap();
        // The threshold at (ε = 1, α = 0.3) is cleared by every block.
        let g = ParamGrid::new(vec![1.0], vec![0.3], 20).unwrap();
        let rep = i_theta_convergence_check(
            &SequenceSource::indicator_of_squares(),
            &PnSpace::real_line(),
            &LacunaryScheme::geometric(2.0).unwrap(),
            &IdealOracle::density(),
            &Point::scalar(0.0),
            &g,
        )
        .unwrap();
        assert!(rep.points[0].offending.is_empty());
        assert_eq!(r.at_one.point(1.0, 0.25).unwrap().offending, (1..=20).collect::<Vec<_>>());
    }

    #[test]
    fn scenario_form_agrees() {
        let out = run_parsed(&squares_indicator_scenario(0.0), &RunOptions::default()).unwrap();
        assert_eq!(out.exit_code(), 0);
        let out = run_parsed(&squares_indicator_scenario(1.0), &RunOptions::default()).unwrap();
        assert_eq!(out.exit_code(), 1);
    }
}
