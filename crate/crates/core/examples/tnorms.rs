//! T-norm axioms on a rational grid, a custom norm that breaks them, and the
//! three triangle functions on sampled distribution functions.

use lacunary_pn::algebra::{
    check_tnorm_axioms, check_tnorm_axioms_float, triangle_eval, unit_grid_triples, DistributionFunction, GridDF,
    TNorm, TriangleKind,
};

fn main() -> lacunary_pn::Result<()> {
    let triples = unit_grid_triples(10);
    for norm in [TNorm::Min, TNorm::Product] {
        let rep = check_tnorm_axioms(&norm, &triples);
        println!("{:>8}: all axioms {} (exact: {})", norm.name(), rep.all_passed(), rep.exact);
    }

    // Not associative.
    let mean = TNorm::custom("half-product", |s, t| if s == 1.0 { t } else if t == 1.0 { s } else { s * t / 2.0 });
    for o in check_tnorm_axioms_float(&mean, &triples).outcomes {
        println!("half-product {:<26} passed={} worst={:.3e}", o.name, o.passed, o.worst_deviation);
    }

    println!("T*(0.3, 0.6): min {}, product {}", TNorm::Min.conorm(0.3, 0.6)?, TNorm::Product.conorm(0.3, 0.6)?);

    let grid = GridDF::uniform_grid(4.0, 9)?;
    let f = GridDF::sample(&DistributionFunction::rational(), grid.clone())?;
    let g = GridDF::sample(&DistributionFunction::Exponential { rate: 1.5 }, grid)?;
    for kind in [TriangleKind::TauT, TriangleKind::TauTStar, TriangleKind::PiT] {
        let out = triangle_eval(kind, &f, &g, &TNorm::Product)?;
        let vals: Vec<String> = out.df.values().iter().map(|v| format!("{v:.3}")).collect();
        println!("{kind:?}: [{}]", vals.join(", "));
    }
    Ok(())
}
