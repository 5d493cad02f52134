//! The three Cauchy criteria, with fixed and default reference indices.

use lacunary_pn::points_cauchy::{
    i_star_theta_cauchy_check, i_theta_cauchy_check, theta_cauchy_check, MStrategy,
};
use lacunary_pn::{IdealOracle, LacunaryScheme, ParamGrid, PnSpace, SequenceSource};

fn main() -> lacunary_pn::Result<()> {
    let space = PnSpace::real_line();
    let theta = LacunaryScheme::geometric(2.0)?;
    let oracle = IdealOracle::density();
    let grid = ParamGrid::new(vec![1.0, 0.5], vec![0.25, 0.5], 16)?;

    for seq in [SequenceSource::reciprocal(1.0), SequenceSource::alternating()] {
        let t = theta_cauchy_check(&seq, &space, &theta, &grid, &MStrategy::Default)?;
        let i = i_theta_cauchy_check(&seq, &space, &theta, &oracle, &grid, &MStrategy::Fixed(vec![1, 100]))?;
        let s = i_star_theta_cauchy_check(&seq, &space, &theta, &oracle, &grid, None)?;
        println!("{}: theta {}, I_theta {}, I*_theta {}", seq.label(), t.overall, i.overall, s.overall);
        for p in &t.points {
            println!("  eps {:<4} alpha {:<4} reference m = {:?}: {}", p.eps, p.alpha, p.reference, p.status());
        }
    }
    Ok(())
}
