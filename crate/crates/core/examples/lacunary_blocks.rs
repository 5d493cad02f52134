//! Lacunary schemes, their blocks, and block averages of ν.

use lacunary_pn::lacunary::{block_average, SchemeDescriptor};
use lacunary_pn::{LacunaryScheme, Point, PnSpace, SequenceSource};

fn main() -> lacunary_pn::Result<()> {
    let schemes = [
        LacunaryScheme::geometric(2.0)?,
        LacunaryScheme::new(SchemeDescriptor::Polynomial { p: 2 })?,
        LacunaryScheme::explicit(vec![0, 3, 9, 20, 45, 100])?,
    ];
    for theta in &schemes {
        let blocks: Vec<String> = theta.blocks(5)?.iter().map(|(a, b)| format!("({a},{b}]")).collect();
        println!("{:?}: {}", theta.descriptor(), blocks.join(" "));
    }
    println!("index 37 lies in block {:?} of 2^r", schemes[0].block_of(37, 10)?);

    let space = PnSpace::real_line();
    let seq = SequenceSource::indicator_of_squares();
    for r in 1..=10 {
        let avg = block_average(&seq, &space, &schemes[0], r, &Point::scalar(0.0), 1.0)?;
        println!("r = {r:>2}  h_r = {:>4}  average nu at L=0, eps=1: {avg:.4}", schemes[0].width(r)?);
    }

    // Explicit prefixes are only checked for strict increase.
    let flat = LacunaryScheme::explicit(vec![0, 2, 4, 6, 8, 10])?;
    println!("flat prefix accepted, growth asserted by user: {}", flat.asymptotics_asserted_by_user());
    println!("{:?}", LacunaryScheme::explicit(vec![0, 2, 2, 6]).err());
    println!("{:?}", flat.validate_horizon(8).err());
    Ok(())
}
