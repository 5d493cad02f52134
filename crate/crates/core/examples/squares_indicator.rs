//! The indicator of the perfect squares converges to 0 but not to 1 under
//! `k_r = 2^r` and the density ideal, even though it takes the value 1
//! infinitely often.

use lacunary_pn::scenario::reproduce_squares_indicator;

fn main() -> lacunary_pn::Result<()> {
    let rep = reproduce_squares_indicator()?;
    println!("L = 0: {}", rep.at_zero.overall);
    println!("L = 1: {}", rep.at_one.overall);
    println!("L = 0, finite ideal: {}", rep.finite_ideal_at_zero.overall);
    for p in &rep.at_zero.points {
        let avgs: Vec<String> = p.block_averages.iter().take(6).map(|a| format!("{a:.3}")).collect();
        println!(
            "  eps {:<4} alpha {:<5} offending {:<12} first averages {}",
            p.eps,
            p.alpha,
            format!("{:?}", p.offending),
            avgs.join(" ")
        );
    }
    Ok(())
}
