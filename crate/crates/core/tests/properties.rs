//! Randomized checks of the algebraic invariants.

use std::cell::RefCell;
use std::rc::Rc;

use polystring_core::census::enumerate_cstrings;
use polystring_core::constructions::{coxeter_group, CoxeterFamily};
use polystring_core::cstring::CString;
use polystring_core::engine::{normal_subgroups, FiniteGroup, Perm, TABLE_CAP};
use polystring_core::ff::{prime_power, FieldContext};
use polystring_core::linalg::{eigen_order_lcm, quadratic_eigen_orders, GfMatrix};
use polystring_core::polytope::{disc_structure, export_chamber_graph, f_vector, GraphFormat};
use proptest::prelude::*;

fn field_orders() -> Vec<u64> {
    (2..=10_000).filter(|&q| prime_power(q).is_some()).collect()
}

fn arb_field() -> impl Strategy<Value = FieldContext> {
    prop::sample::select(field_orders()).prop_map(|q| FieldContext::of_order(q).unwrap())
}

fn arb_small_field() -> impl Strategy<Value = FieldContext> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 31])
        .prop_map(|q| FieldContext::of_order(q).unwrap())
}

fn matrix(f: &FieldContext, n: usize, idx: &[u64]) -> GfMatrix {
    GfMatrix::from_entries(f, idx.iter().take(n * n).map(|&i| f.from_index(i % f.size())).collect())
}

struct Strings {
    group: Rc<FiniteGroup>,
    normals: Vec<FiniteGroup>,
    strings: Vec<CString>,
}

thread_local! {
    static CENSUS: RefCell<Vec<Strings>> = const { RefCell::new(Vec::new()) };
}

/// Every census string of B3, B4, D3 and D5, computed once per thread.
fn with_census_string<R>(pick: (usize, usize), f: impl FnOnce(&Strings, &CString) -> R) -> R {
    CENSUS.with(|c| {
        let mut c = c.borrow_mut();
        if c.is_empty() {
            for (fam, n) in [(CoxeterFamily::B, 3), (CoxeterFamily::B, 4), (CoxeterFamily::D, 3), (CoxeterFamily::D, 5)] {
                let g = coxeter_group(fam, n).unwrap().group;
                let strings = enumerate_cstrings(&g, 2, usize::MAX)
                    .unwrap()
                    .into_iter()
                    .map(|r| CString::new(g.clone(), r.generators).unwrap())
                    .collect();
                let normals = normal_subgroups(&g, TABLE_CAP).unwrap();
                c.push(Strings { group: g, normals, strings });
            }
        }
        let s = &c[pick.0 % c.len()];
        f(s, &s.strings[pick.1 % s.strings.len()])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_inverse_order_and_roots(f in arb_field(), i in any::<u64>()) {
        let q = f.size();
        let x = f.from_index(1 + i % (q - 1));
        prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        let o = f.order(&x).unwrap();
        prop_assert_eq!((q - 1) % o, 0);
        prop_assert_eq!(f.pow(&x, o), f.one());
        match f.sqrt(&x) {
            Some(r) => prop_assert_eq!(f.mul(&r, &r), x.clone()),
            None => prop_assert!(!f.is_square(&x)),
        }
        if q % 2 == 1 {
            prop_assert_eq!(f.is_square(&x), f.pow(&x, (q - 1) / 2) == f.one());
        }
    }

    #[test]
    fn element_of_order_is_reproducible(q in prop::sample::select(field_orders()), k in 1u64..64) {
        let a = FieldContext::of_order(q).unwrap();
        let b = FieldContext::of_order(q).unwrap();
        let n = (1..=q - 1).filter(|d| (q - 1) % d == 0).nth(k as usize % 8).unwrap_or(q - 1);
        let (x, y) = (a.element_of_order(n).unwrap(), b.element_of_order(n).unwrap());
        prop_assert_eq!(a.index_of(&x), b.index_of(&y));
        prop_assert_eq!(a.order(&x).unwrap(), n);
    }

    #[test]
    fn inverse_is_two_sided(f in arb_small_field(), n in 2usize..=6, idx in prop::collection::vec(any::<u64>(), 36)) {
        let m = matrix(&f, n, &idx);
        prop_assume!(!m.det().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert!(inv.mul(&m).is_identity());
        prop_assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn fixed_space_is_conjugation_invariant(
        f in arb_small_field(),
        n in 2usize..=6,
        a in prop::collection::vec(any::<u64>(), 36),
        b in prop::collection::vec(any::<u64>(), 36),
    ) {
        let g = matrix(&f, n, &a);
        let h = matrix(&f, n, &b);
        prop_assume!(!h.det().is_zero());
        let conj = h.mul(&g).mul(&h.inverse().unwrap());
        prop_assert_eq!(g.fixed_space_dim(), conj.fixed_space_dim());
    }

    #[test]
    fn eigenvalue_orders_give_the_matrix_order(f in arb_small_field(), idx in prop::collection::vec(any::<u64>(), 4)) {
        let y = matrix(&f, 2, &idx);
        prop_assume!(!y.det().is_zero());
        let e = quadratic_eigen_orders(&y).unwrap();
        prop_assume!(e[0].eigenvalue != e[1].eigenvalue);
        let q = f.size();
        prop_assert_eq!(y.order(q * q), Some(eigen_order_lcm(&e)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_reverses_invariants(pick in (0usize..4, any::<usize>())) {
        with_census_string(pick, |s, cs| {
            let dual = cs.dual();
            let mut sch = cs.schlafli().0;
            sch.reverse();
            assert_eq!(dual.schlafli().0, sch);
            let mut fv = f_vector(cs).unwrap().0;
            fv.reverse();
            assert_eq!(f_vector(&dual).unwrap().0, fv);
            assert_eq!(
                cs.is_unravelled(&s.normals).unwrap().unravelled,
                dual.is_unravelled(&s.normals).unwrap().unravelled
            );
        });
    }

    #[test]
    fn conjugate_strings_are_isomorphic(pick in (0usize..4, any::<usize>()), k in any::<usize>()) {
        with_census_string(pick, |s, cs| {
            let elems = s.group.enumerate(TABLE_CAP).unwrap();
            let h = &elems[k % elems.len()];
            let conj: Vec<Perm> = cs.generators().iter().map(|x| x.conjugate_by(h)).collect();
            let other = CString::new(s.group.clone(), conj).unwrap();
            assert!(cs.isomorphic(&other).unwrap());
            assert_eq!(cs.schlafli(), other.schlafli());
            assert_eq!(f_vector(cs).unwrap(), f_vector(&other).unwrap());
        });
    }

    #[test]
    fn chamber_graph_is_regular_and_discs_cover(pick in (0usize..4, any::<usize>())) {
        with_census_string(pick, |s, cs| {
            let order = s.group.order() as usize;
            let d = disc_structure(cs, 10_000).unwrap();
            assert_eq!(1 + d.layers.iter().sum::<usize>(), order);
            assert!(d.layers.iter().all(|&l| l > 0));
            let edges = export_chamber_graph(cs, GraphFormat::EdgeList, 10_000).unwrap();
            let n = cs.rank();
            let mut seen = vec![0u32; order * n];
            for line in edges.lines() {
                let v: Vec<usize> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
                let label = v[2] - 1;
                seen[v[0] * n + label] += 1;
                seen[v[1] * n + label] += 1;
            }
            assert!(seen.iter().all(|&c| c == 1), "each chamber has one i-neighbour per i");
        });
    }
}
