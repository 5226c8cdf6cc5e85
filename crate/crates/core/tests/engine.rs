use std::collections::HashSet;

use polystring_core::engine::{
    normal_subgroups, quotient_images, FiniteGroup, Perm, TABLE_CAP,
};
use proptest::prelude::*;

fn perm(d: usize, s: &str) -> Perm {
    Perm::parse_cycles(d, s).unwrap()
}

/// Hash-set closure of the generators; independent of the chain machinery.
fn closure(d: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(d);
    let mut queue = vec![id.clone()];
    seen.insert(id);
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

fn arb_perm(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn arb_gens() -> impl Strategy<Value = (usize, Vec<Perm>)> {
    (2usize..=7).prop_flat_map(|d| (Just(d), prop::collection::vec(arb_perm(d), 0..4)))
}

fn s4() -> FiniteGroup {
    FiniteGroup::new(4, vec![perm(4, "(1,2)"), perm(4, "(1,2,3,4)")]).unwrap()
}

#[test]
fn sym4_normal_subgroup_orders() {
    let orders: Vec<u128> = normal_subgroups(&s4(), TABLE_CAP)
        .unwrap()
        .iter()
        .map(|n| n.order())
        .collect();
    assert_eq!(orders, vec![1, 4, 12, 24]);
}

#[test]
fn simple_group_has_two_normal_subgroups() {
    // A5
    let g = FiniteGroup::new(5, vec![perm(5, "(1,2,3)"), perm(5, "(1,2,3,4,5)")]).unwrap();
    assert_eq!(g.order(), 60);
    assert_eq!(normal_subgroups(&g, TABLE_CAP).unwrap().len(), 2);
}

#[test]
fn sym4_quotients() {
    let g = s4();
    let v4 = g
        .subgroup(vec![perm(4, "(1,2)(3,4)"), perm(4, "(1,3)(2,4)")])
        .unwrap();
    let xs = [perm(4, "(1,2)"), perm(4, "(1,2,3)")];
    let (q, imgs) = quotient_images(&g, &v4, &xs, TABLE_CAP).unwrap();
    assert_eq!(q.order(), 6);
    assert_eq!(imgs[0].order(), 2);
    assert_eq!(imgs[1].order(), 3);
    let a4 = g.subgroup(vec![perm(4, "(1,2,3)"), perm(4, "(2,3,4)")]).unwrap();
    let (q, imgs) = quotient_images(&g, &a4, &xs, TABLE_CAP).unwrap();
    assert_eq!(q.order(), 2);
    assert!(imgs[1].is_identity());
    let (q, _) = quotient_images(&g, &FiniteGroup::trivial(4), &xs, TABLE_CAP).unwrap();
    assert_eq!(q.order(), 24);
    let s3 = g.subgroup(vec![perm(4, "(1,2)"), perm(4, "(1,2,3)")]).unwrap();
    assert!(quotient_images(&g, &s3, &xs, TABLE_CAP).is_err());
}

#[test]
fn normal_lattice_is_closed() {
    // dihedral group of order 16
    let g = FiniteGroup::new(8, vec![perm(8, "(1,2,3,4,5,6,7,8)"), perm(8, "(2,8)(3,7)(4,6)")]).unwrap();
    let normals = normal_subgroups(&g, TABLE_CAP).unwrap();
    let sets: Vec<HashSet<Perm>> = normals
        .iter()
        .map(|n| g.enumerate(100).unwrap().into_iter().filter(|x| n.contains(x).unwrap()).collect())
        .collect();
    for a in &sets {
        for b in &sets {
            let meet: HashSet<Perm> = a.intersection(b).cloned().collect();
            assert!(sets.contains(&meet));
            let gens: Vec<Perm> = a.union(b).cloned().collect();
            let join = closure(8, &gens);
            assert!(sets.contains(&join));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_matches_closure((d, gens) in arb_gens()) {
        let g = FiniteGroup::new(d, gens.clone()).unwrap();
        let oracle = closure(d, &gens);
        prop_assert!(g.is_certified());
        prop_assert_eq!(g.order(), oracle.len() as u128);
        for x in &oracle {
            prop_assert!(g.contains(x).unwrap());
        }
        for g0 in &gens {
            prop_assert!(g.contains(g0).unwrap());
        }
    }

    #[test]
    fn intersection_matches_sets(a in prop::collection::vec(arb_perm(6), 1..3),
                                 b in prop::collection::vec(arb_perm(6), 1..3)) {
        let sym = FiniteGroup::new(6, vec![perm(6, "(1,2)"), perm(6, "(1,2,3,4,5,6)")]).unwrap();
        let ga = sym.subgroup(a.clone()).unwrap();
        let gb = sym.subgroup(b.clone()).unwrap();
        let c = ga.intersection(&gb, 1_000_000).unwrap();
        let sa = closure(6, &a);
        let sb = closure(6, &b);
        let expected = sa.intersection(&sb).count();
        prop_assert_eq!(c.order(), expected as u128);
        for x in c.enumerate(1000).unwrap() {
            prop_assert!(ga.contains(&x).unwrap() && gb.contains(&x).unwrap());
        }
    }

    #[test]
    fn quotient_orders_multiply(gens in prop::collection::vec(arb_perm(5), 1..3)) {
        let g = FiniteGroup::new(5, gens).unwrap();
        for n in normal_subgroups(&g, TABLE_CAP).unwrap() {
            let invs: Vec<Perm> = g.enumerate(1000).unwrap().into_iter().filter(|x| x.is_involution()).collect();
            let (q, imgs) = quotient_images(&g, &n, &invs, TABLE_CAP).unwrap();
            prop_assert_eq!(q.order() * n.order(), g.order());
            for y in imgs {
                prop_assert!(y.pow(2).is_identity());
            }
        }
    }

    #[test]
    fn automorphism_test_is_an_equivalence(c1 in arb_perm(4), c2 in arb_perm(4)) {
        let g = s4();
        let src = vec![perm(4, "(1,2)"), perm(4, "(2,3)"), perm(4, "(3,4)")];
        let a: Vec<Perm> = src.iter().map(|x| x.conjugate_by(&c1)).collect();
        let b: Vec<Perm> = a.iter().map(|x| x.conjugate_by(&c2)).collect();
        prop_assert!(g.tuple_extends_to_automorphism(&src, &src).unwrap());
        prop_assert!(g.tuple_extends_to_automorphism(&src, &a).unwrap());
        prop_assert!(g.tuple_extends_to_automorphism(&a, &src).unwrap());
        prop_assert!(g.tuple_extends_to_automorphism(&a, &b).unwrap());
        prop_assert!(g.tuple_extends_to_automorphism(&src, &b).unwrap());
    }
}

#[test]
fn structured_groups_match_closure() {
    use polystring_core::constructions::{coxeter_group, example55_group, CoxeterFamily};
    let mut cases: Vec<(usize, Vec<Perm>)> = Vec::new();
    for (fam, n) in [
        (CoxeterFamily::B, 3),
        (CoxeterFamily::B, 4),
        (CoxeterFamily::D, 3),
        (CoxeterFamily::D, 4),
        (CoxeterFamily::D, 5),
    ] {
        let c = coxeter_group(fam, n).unwrap();
        cases.push((2 * n, c.generators));
    }
    cases.push((27, example55_group().unwrap().group.generators().to_vec()));
    cases.push((7, vec![perm(7, "(1,2)"), perm(7, "(1,2,3,4,5,6,7)")]));
    cases.push((7, vec![perm(7, "(1,2,3)"), perm(7, "(3,4,5,6,7)")]));
    cases.push((7, vec![perm(7, "(1,2,4)(3,6,5)"), perm(7, "(1,2,3,4,5,6,7)")]));
    cases.push((6, vec![perm(6, "(1,2,3)"), perm(6, "(1,2)"), perm(6, "(1,4)(2,5)(3,6)")]));
    for (d, gens) in cases {
        let g = FiniteGroup::new(d, gens.clone()).unwrap();
        let oracle = closure(d, &gens);
        assert!(oracle.len() <= 10_000);
        assert_eq!(g.order(), oracle.len() as u128);
        assert!(g.is_certified());
    }
}
