//! Real-valued convergence modes: I, statistical, N_θ and I_θ.

use lacunary_pn::classical_modes::{
    n_theta_check, real_i_convergence_check, real_i_theta_check, statistical_convergence_check, RealSequence,
};
use lacunary_pn::{IdealOracle, LacunaryScheme};

fn main() -> lacunary_pn::Result<()> {
    let theta = LacunaryScheme::geometric(2.0)?;
    let density = IdealOracle::density();
    let finite = IdealOracle::finite(100_000);
    let seqs = [
        (RealSequence::indicator_of_squares(), 0.0),
        (RealSequence::alternating(), 1.0),
        (RealSequence::new("1/k", |k| 1.0 / k as f64), 0.0),
    ];
    for (x, l) in &seqs {
        println!("{} -> {l}", x.label());
        println!("  I (density):   {}", real_i_convergence_check(x, *l, 0.5, &density)?.status);
        println!("  I (finite):    {}", real_i_convergence_check(x, *l, 0.5, &finite)?.status);
        println!("  statistical:   {}", statistical_convergence_check(x, *l, 0.5, &density)?.status);
        println!("  N_theta:       {}", n_theta_check(x, *l, &theta, 0.05, 20)?.status);
        println!("  I_theta:       {}", real_i_theta_check(x, *l, &theta, 0.5, &density, 20)?.status);
    }
    let means = seqs[0].0.block_means(0.0, &theta, 8)?;
    println!("block means of the squares indicator: {means:.4?}");
    Ok(())
}
