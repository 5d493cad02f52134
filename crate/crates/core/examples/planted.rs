//! Seeded planted instances with a known limit, recovered by a limit scan
//! against decoy candidates.

use lacunary_pn::algebra::{DistributionFunction, TNorm};
use lacunary_pn::pn_convergence::{limit_scan, PlantedConfig, PlantedInstance};
use lacunary_pn::{IdealOracle, ParamGrid, PnSpace};

fn main() -> lacunary_pn::Result<()> {
    let oracle = IdealOracle::density();
    let theta = PlantedInstance::scheme();
    let grid = ParamGrid::default().with_blocks(PlantedInstance::BLOCKS)?;
    for seed in 0..5 {
        let inst = PlantedInstance::generate(seed, &PlantedConfig::default())?;
        let space = PnSpace::simple(inst.dim(), DistributionFunction::rational(), TNorm::Product)?;
        let mut candidates = inst.decoys(3, 1.0);
        candidates.insert(seed as usize % 4, inst.limit.clone());
        let scan = limit_scan(&inst.seq, &space, &theta, &oracle, &candidates, &grid)?;
        let accepted: Vec<String> = scan.accepted.iter().map(ToString::to_string).collect();
        println!(
            "seed {seed}: dim {}, planted {}, {} spikes below 1000, accepted [{}]",
            inst.dim(),
            inst.limit,
            inst.spikes.count_upto(1000)?,
            accepted.join(", ")
        );
    }
    Ok(())
}
