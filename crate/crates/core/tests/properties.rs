use std::collections::BTreeSet;

use lacunary_pn::algebra::{DistributionFunction, TNorm};
use lacunary_pn::ideals::{natural_density, Ideal, IdealOracle, IndexSet, Status};
use lacunary_pn::lacunary::{block_average, LacunaryScheme, SequenceSource};
use lacunary_pn::pn_space::{Point, PnSpace};
use num_rational::Ratio;
use proptest::prelude::*;

fn finite_set() -> impl Strategy<Value = BTreeSet<u64>> {
    prop::collection::btree_set(1u64..300, 0..40)
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![Just(Status::Holds), Just(Status::Fails), Just(Status::Inconclusive)]
}

fn residues(m: u64, a: u64) -> IndexSet {
    IndexSet::predicate(format!("{a} mod {m}"), move |k| k % m == a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(s in finite_set(), k in 1u64..400) {
        let a = IndexSet::finite(s.iter().copied()).unwrap();
        let c = a.complement();
        prop_assert_eq!(c.contains(k).map(|b| !b), a.contains(k));
        prop_assert_eq!(c.complement().contains(k), a.contains(k));
    }

    #[test]
    fn union_and_intersection_are_pointwise(s in finite_set(), t in finite_set(), n in 1u64..400) {
        let a = IndexSet::finite(s.iter().copied()).unwrap();
        let b = IndexSet::finite(t.iter().copied()).unwrap().complement();
        let u = a.union(&b);
        let i = a.intersection(&b);
        for k in 1..=n {
            let (x, y) = (a.contains(k).unwrap(), b.contains(k).unwrap());
            prop_assert_eq!(u.contains(k), Some(x || y));
            prop_assert_eq!(i.contains(k), Some(x && y));
        }
        let count = |z: &IndexSet| z.count_upto(n).unwrap();
        prop_assert_eq!(count(&u) + count(&i), count(&a) + count(&b));
    }

    #[test]
    fn density_adds_over_disjoint_sets(m in 2u64..20, a in 0u64..20, b in 0u64..20, n in 1u64..5000) {
        let (a, b) = (a % m, b % m);
        prop_assume!(a != b);
        let (x, y) = (residues(m, a), residues(m, b));
        let d = |s: &IndexSet| natural_density(s, n).unwrap();
        prop_assert_eq!(d(&x.union(&y)), d(&x) + d(&y));
        prop_assert_eq!(d(&x) + d(&x.complement()), Ratio::from_integer(1));
    }

    #[test]
    fn combine_rule(parts in prop::collection::vec(status(), 0..8)) {
        let c = Status::combine(parts.iter().copied());
        prop_assert_eq!(c == Status::Holds, parts.iter().all(|&s| s == Status::Holds));
        if parts.contains(&Status::Fails) {
            prop_assert_eq!(c, Status::Fails);
        }
    }

    #[test]
    fn finite_oracle_duality(s in finite_set(), bound in 10u64..2000) {
        let o = IdealOracle::finite(bound);
        for e in [IndexSet::finite(s.iter().copied()).unwrap(), residues(3, 1), IndexSet::squares()] {
            prop_assert_eq!(o.ideal_contains(&e).status, o.filter_contains(&e.complement()).status);
        }
    }

    #[test]
    fn block_average_is_a_monotone_unit_quantity(
        c in -3.0f64..3.0,
        l in -3.0f64..3.0,
        e1 in 0.01f64..5.0,
        e2 in 0.01f64..5.0,
        r in 1usize..12,
    ) {
        let sp = PnSpace::real_line();
        let theta = LacunaryScheme::geometric(2.0).unwrap();
        let seq = SequenceSource::scalar("shifted reciprocal", move |k| c + 1.0 / k as f64);
        let target = Point::scalar(l);
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let a = block_average(&seq, &sp, &theta, r, &target, lo).unwrap();
        let b = block_average(&seq, &sp, &theta, r, &target, hi).unwrap();
        prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        prop_assert!(a <= b);
        let exact = block_average(&SequenceSource::constant(target.clone()), &sp, &theta, r, &target, lo).unwrap();
        prop_assert_eq!(exact, 1.0);
    }

    #[test]
    fn tnorm_float_laws(s in 0.0f64..=1.0, t in 0.0f64..=1.0, u in 0.0f64..=1.0) {
        for n in [TNorm::Min, TNorm::Product] {
            prop_assert_eq!(n.eval(s, t).unwrap(), n.eval(t, s).unwrap());
            prop_assert!(n.eval(s, t).unwrap() <= s.min(t));
            if t <= u {
                prop_assert!(n.eval(s, t).unwrap() <= n.eval(s, u).unwrap());
            }
            prop_assert!(n.conorm(s, t).unwrap() >= s.max(t));
            prop_assert_eq!(n.eval(1.0, s).unwrap(), s);
        }
    }

    #[test]
    fn nu_is_non_decreasing_in_t(x in -10.0f64..10.0, t1 in 0.0f64..20.0, t2 in 0.0f64..20.0) {
        let sp = PnSpace::simple(1, DistributionFunction::rational(), TNorm::Product).unwrap();
        let p = Point::scalar(x);
        let (lo, hi) = (t1.min(t2), t1.max(t2));
        prop_assert!(sp.nu(&p, lo) <= sp.nu(&p, hi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn density_oracle_is_monotone_and_dual(m1 in 2u64..400, m2 in 2u64..8) {
        let o = IdealOracle::density();
        let big = IndexSet::predicate("multiples", move |k| k % m1 == 0);
        let m = m1 * m2;
        let small = IndexSet::predicate("finer multiples", move |k| k % m == 0);
        let (vb, vs) = (o.ideal_contains(&big).status, o.ideal_contains(&small).status);
        if vb == Status::Holds {
            prop_assert_eq!(vs, Status::Holds);
        }
        if vs == Status::Fails {
            prop_assert_eq!(vb, Status::Fails);
        }
        prop_assert_eq!(vb, o.filter_contains(&big.complement()).status);
    }
}
