//! Membership queries against the density and finite ideals, with evidence.

use std::collections::BTreeSet;
use std::sync::Arc;

use lacunary_pn::ideals::{check_ideal_axioms, natural_density, UniverseIdeal};
use lacunary_pn::{Ideal, IdealOracle, IndexSet};

fn main() -> lacunary_pn::Result<()> {
    let density = IdealOracle::density();
    let finite = IdealOracle::finite(10_000);
    let sets = [
        ("squares", IndexSet::squares()),
        ("evens", IndexSet::evens()),
        ("{1, 5, 90}", IndexSet::finite([1, 5, 90])?),
        ("multiples of 1000", IndexSet::predicate("k = 0 mod 1000", |k| k % 1000 == 0)),
        ("complement of squares", IndexSet::squares().complement()),
    ];
    for (name, set) in &sets {
        let d = density.ideal_contains(set);
        let f = finite.ideal_contains(set);
        println!("{name:<22} density: {:<12} finite: {}", d.status, f.status);
    }

    let v = density.ideal_contains(&IndexSet::squares());
    println!("evidence for squares: {:?}", v.density_trace());
    println!("squares in the filter? {}", density.filter_contains(&IndexSet::squares()).status);
    println!("d_1000(evens) = {}", natural_density(&IndexSet::evens(), 1000)?);

    // Not closed under unions.
    let small = UniverseIdeal {
        name: "at most two elements".into(),
        universe: (1..=8).collect(),
        decide: Arc::new(|s: &BTreeSet<u64>| s.len() <= 2),
    };
    let rep = check_ideal_axioms(&small, &(1..=8).collect::<Vec<_>>(), &[(vec![1], vec![2]), (vec![1, 2], vec![3])])?;
    for o in rep.outcomes {
        println!("{:<32} passed={}", o.name, o.passed);
    }
    Ok(())
}
