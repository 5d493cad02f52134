//! A two-dimensional probabilistic normed space: ν values, open balls and a
//! randomised axiom check.

use lacunary_pn::algebra::{DistributionFunction, TNorm};
use lacunary_pn::{Point, PnSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> lacunary_pn::Result<()> {
    let space = PnSpace::simple(2, DistributionFunction::rational(), TNorm::Min)?;
    let x = Point::new(vec![3.0, 4.0])?;
    for t in [0.0, 1.0, 5.0, 50.0] {
        println!("nu_x({t}) = {:.4}", space.nu(&x, t));
    }

    let y = Point::new(vec![3.2, 4.1])?;
    println!("y in B_x(0.1, 1)? {}", space.open_ball_contains(&x, 0.1, 1.0, &y)?);
    println!("y in B_x(0.1, 10)? {}", space.open_ball_contains(&x, 0.1, 10.0, &y)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples: Vec<_> = (0..500)
        .map(|_| {
            let p = Point(vec![rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)]);
            let q = Point(vec![rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)]);
            (p, q, rng.random_range(0.01..10.0), rng.random_range(0.01..10.0))
        })
        .collect();
    for o in space.check_axioms(&samples).outcomes {
        println!("{:<22} passed={} worst={:.2e}", o.name, o.passed, o.worst_deviation);
    }
    Ok(())
}
