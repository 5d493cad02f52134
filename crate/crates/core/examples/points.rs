//! Limit points and cluster points of sequences with several accumulation
//! values, with the per-candidate witness subsequences.

use lacunary_pn::points_cauchy::{cluster_points_scan, limit_points_scan};
use lacunary_pn::{IdealOracle, LacunaryScheme, ParamGrid, Point, PnSpace, SequenceSource};

fn main() -> lacunary_pn::Result<()> {
    let space = PnSpace::real_line();
    let theta = LacunaryScheme::geometric(2.0)?;
    let oracle = IdealOracle::density();
    let grid = ParamGrid::default();
    let candidates: Vec<Point> = [-1.0, 0.0, 0.5, 1.0].into_iter().map(Point::scalar).collect();

    for seq in [SequenceSource::alternating(), SequenceSource::indicator_of_squares()] {
        let limits = limit_points_scan(&seq, &space, &theta, &oracle, &candidates, &grid)?;
        let clusters = cluster_points_scan(&seq, &space, &theta, &oracle, &candidates, &grid)?;
        println!("{}", seq.label());
        for (l, c) in limits.evidence.iter().zip(&clusters.evidence) {
            println!(
                "  {:>5}: limit point {:<5} cluster point {:<5} touched blocks {:?}",
                l.candidate.to_string(),
                l.accepted,
                c.accepted,
                l.touched_blocks
            );
        }
    }
    Ok(())
}
