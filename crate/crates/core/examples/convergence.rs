//! The three probabilistic convergence checks on one sequence, with the
//! per-grid-point details of the lacunary ideal check.

use lacunary_pn::pn_convergence::{
    i_theta_convergence_check as i_theta_check, equivalent_forms_check, nu_convergence_check, theta_convergence_check,
};
use lacunary_pn::{IdealOracle, LacunaryScheme, ParamGrid, Point, PnSpace, SequenceSource};

fn main() -> lacunary_pn::Result<()> {
    let space = PnSpace::real_line();
    let theta = LacunaryScheme::geometric(2.0)?;
    let oracle = IdealOracle::density();
    let grid = ParamGrid::default();
    let seq = SequenceSource::reciprocal(1.0);
    let zero = Point::scalar(0.0);

    let nu = nu_convergence_check(&seq, &space, &zero, &grid)?;
    let th = theta_convergence_check(&seq, &space, &theta, &zero, &grid)?;
    let it = i_theta_check(&seq, &space, &theta, &oracle, &zero, &grid)?;
    println!("1/k -> 0: nu {}, theta {}, I_theta {}", nu.overall, th.overall, it.overall);
    for p in &th.points {
        println!(
            "  eps {:<4} alpha {:<5} {:<12} tail from block {:?}",
            p.eps,
            p.alpha,
            p.status().to_string(),
            p.tail_start
        );
    }

    let wrong = i_theta_check(&seq, &space, &theta, &oracle, &Point::scalar(0.5), &grid)?;
    println!("1/k -> 0.5: {} (offending blocks {:?})", wrong.overall, wrong.offending_anywhere());

    let b = equivalent_forms_check(&seq, &space, &theta, &oracle, &zero, 0.5, 0.25, 20)?;
    println!(
        "equivalent forms at (0.5, 0.25): ideal {}, filter {}, real limit {}, consistent {}",
        b.offending_in_ideal.status, b.good_in_filter.status, b.real_limit_is_one.status, b.consistent
    );
    Ok(())
}
