//! Splitting a sequence into a convergent part plus a part supported on a
//! block set, and changing a convergent sequence on a small index set.

use lacunary_pn::pn_convergence::{i_theta_convergence_check, PlantedConfig, PlantedInstance};
use lacunary_pn::points_cauchy::{decompose, modify_on_null_set, touched_blocks};
use lacunary_pn::{Ideal, IdealOracle, IndexSet, ParamGrid, PnSpace, SequenceSource};

fn main() -> lacunary_pn::Result<()> {
    let inst = PlantedInstance::generate(7, &PlantedConfig { dim: Some(1), ..Default::default() })?;
    let theta = PlantedInstance::scheme();
    let space = PnSpace::real_line();
    let oracle = IdealOracle::density();
    let grid = ParamGrid::default().with_blocks(PlantedInstance::BLOCKS)?;
    let limit = &inst.limit;

    let m_prime = [1, 3, 4, 9];
    let (y, z) = decompose(&inst.seq, &m_prime, limit, &theta, PlantedInstance::BLOCKS)?;
    for k in [1u64, 5, 9, 20, 300] {
        let r = theta.block_of(k, PlantedInstance::BLOCKS)?.unwrap();
        println!("k = {k:>3} block {r:>2}: x = {:<22} y = {:<22} z = {}", inst.seq.at(k), y.at(k), z.at(k));
    }
    let y_rep = i_theta_convergence_check(&y, &space, &theta, &oracle, limit, &grid)?;
    println!("y converges to {limit}: {}", y_rep.overall);

    let e = IndexSet::finite([2, 3, 40])?;
    let touched = touched_blocks(&e, &theta, PlantedInstance::BLOCKS)?;
    println!("blocks touched by {{2, 3, 40}} in the ideal: {}", oracle.ideal_contains(&touched).status);
    let changed = modify_on_null_set(&inst.seq, &SequenceSource::constant(limit.scale(-3.0)), e)?;
    let rep = i_theta_convergence_check(&changed, &space, &theta, &oracle, limit, &grid)?;
    println!("modified sequence still converges: {}", rep.overall);
    Ok(())
}
