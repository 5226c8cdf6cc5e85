use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use polystring_core::census::*;
use polystring_core::constructions::{coxeter_group, CoxeterFamily};
use polystring_core::cstring::{CString, IpMode};
use polystring_core::engine::{FiniteGroup, Perm};
use polystring_core::polytope::{disc_structure, f_vector};
use polystring_core::Caps;

fn census_of(fam: CoxeterFamily, n: usize) -> (Rc<FiniteGroup>, Vec<CensusRecord>) {
    let c = coxeter_group(fam, n).unwrap();
    let recs = enumerate_cstrings(&c.group, 2, usize::MAX).unwrap();
    (c.group, recs)
}

fn cell(row: &CensusRow, r: usize) -> String {
    row.rank(r).to_string()
}

/// Builds the generator-to-generator map on all elements by walking words;
/// succeeds iff it is a well-defined bijection.
fn word_map_iso(src: &[Perm], dst: &[Perm]) -> bool {
    let d = src[0].degree();
    let id = Perm::identity(d);
    let mut map: HashMap<Perm, Perm> = HashMap::from([(id.clone(), Perm::identity(dst[0].degree()))]);
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        let fx = map[&x].clone();
        head += 1;
        for (s, t) in src.iter().zip(dst) {
            let y = x.then(s);
            let fy = fx.then(t);
            match map.get(&y) {
                Some(v) if *v != fy => return false,
                Some(_) => {}
                None => {
                    map.insert(y.clone(), fy);
                    queue.push(y);
                }
            }
        }
    }
    map.values().collect::<HashSet<_>>().len() == map.len()
}

fn reversed(gens: &[Perm]) -> Vec<Perm> {
    gens.iter().rev().cloned().collect()
}

/// Structural checks every census output must satisfy.
fn check_invariants(g: &Rc<FiniteGroup>, recs: &[CensusRecord]) {
    for (i, a) in recs.iter().enumerate() {
        for b in &recs[i + 1..] {
            if a.rank == b.rank && a.schlafli == b.schlafli && a.f_vector == b.f_vector {
                assert!(!word_map_iso(&a.generators, &b.generators), "duplicate classes");
            }
        }
    }
    for r in recs {
        let cs = CString::new(g.clone(), r.generators.clone()).unwrap();
        let brute = cs.intersection_property(IpMode::Brute).unwrap();
        let rec = cs.intersection_property(IpMode::Recursive).unwrap();
        assert!(brute && rec);
        assert!(cs.verify().unwrap().is_cstring());

        let rev = reversed(&r.generators);
        assert_eq!(r.self_dual, word_map_iso(&r.generators, &rev));
        let partners: Vec<&CensusRecord> = recs
            .iter()
            .filter(|o| o.rank == r.rank && word_map_iso(&o.generators, &rev))
            .collect();
        assert_eq!(partners.len(), 1, "dual class missing or duplicated");
        assert_eq!(partners[0].unravelled, r.unravelled);

        let f = f_vector(&cs).unwrap();
        assert_eq!(f, r.f_vector);
        let mut frev = f_vector(&cs.dual()).unwrap().0;
        frev.reverse();
        assert_eq!(frev, f.0);

        let d = disc_structure(&cs, 1_000_000).unwrap();
        assert_eq!(d.layers.iter().sum::<usize>() + 1, g.order() as usize);
    }
    let row = census_row(recs);
    assert_eq!((row.total.total - row.total.self_dual) % 2, 0);
    for c in row.by_rank.values() {
        assert_eq!((c.total - c.self_dual) % 2, 0);
        assert!(c.unravelled <= c.total);
    }
    let sum: usize = row.by_rank.values().map(|c| c.total).sum();
    assert_eq!(sum, row.total.total);
}

#[test]
fn d3_row() {
    let (g, recs) = census_of(CoxeterFamily::D, 3);
    let row = census_row(&recs);
    assert_eq!(row.total.to_string(), "3(1)[3]");
    check_invariants(&g, &recs);
}

#[test]
fn b3_row() {
    let (g, recs) = census_of(CoxeterFamily::B, 3);
    let row = census_row(&recs);
    assert_eq!(row.total.to_string(), "8(0)[0]");
    assert_eq!(cell(&row, 3), "8(0)[0]");
    check_invariants(&g, &recs);
}

#[test]
fn b3_with_degenerate_strings() {
    let c = coxeter_group(CoxeterFamily::B, 3).unwrap();
    let opts = CensusOptions {
        allow_degenerate: true,
        ..CensusOptions::default()
    };
    let mut census = Census::new(c.group.clone(), opts, Caps::default()).unwrap();
    census.run(&mut || false);
    let row = census_row(&census.finish().unwrap());
    assert_eq!(row.total.to_string(), "14(0)[6]");
}

#[test]
fn b4_row() {
    let (g, recs) = census_of(CoxeterFamily::B, 4);
    let row = census_row(&recs);
    assert_eq!(row.total.to_string(), "14(2)[0]");
    assert_eq!(cell(&row, 3), "6(2)[0]");
    assert_eq!(cell(&row, 4), "8(0)[0]");
    check_invariants(&g, &recs);
}

#[test]
fn d4_row() {
    let (_, recs) = census_of(CoxeterFamily::D, 4);
    assert!(recs.is_empty());
    assert_eq!(census_row(&recs).total.to_string(), "0");
}

#[test]
fn d5_row() {
    let (g, recs) = census_of(CoxeterFamily::D, 5);
    let row = census_row(&recs);
    assert_eq!(row.total.to_string(), "39(1)[16]");
    assert_eq!(cell(&row, 3), "21(1)[0]");
    assert_eq!(cell(&row, 4), "16(0)[14]");
    assert_eq!(cell(&row, 5), "2(0)[2]");
    check_invariants(&g, &recs);
}

/// One rank-3 class, of type {12,12}, is isomorphic to its dual; the
/// word-map oracle confirms it independently of the automorphism test.
#[test]
fn b5_row() {
    let (_, recs) = census_of(CoxeterFamily::B, 5);
    let row = census_row(&recs);
    assert_eq!(row.total.total, 165);
    assert_eq!(row.total.unravelled, 0);
    assert_eq!(cell(&row, 3), "63(1)[0]");
    let sd: Vec<&CensusRecord> = recs.iter().filter(|r| r.self_dual).collect();
    assert_eq!(sd.len(), 1);
    assert_eq!(sd[0].schlafli.0, vec![12, 12]);
    assert_eq!(sd[0].f_vector.0, vec![1, 160, 960, 160, 1]);
    assert!(word_map_iso(&sd[0].generators, &reversed(&sd[0].generators)));
    assert_eq!((row.total.total - row.total.self_dual) % 2, 0);
}

#[test]
fn selftest_agrees() {
    for (fam, n, count) in [(CoxeterFamily::D, 3, 3), (CoxeterFamily::B, 3, 8)] {
        let c = coxeter_group(fam, n).unwrap();
        let r = census_selftest(&c.group).unwrap();
        assert!(r.agrees(), "{fam}{n}: {r:?}");
        assert_eq!(r.reduced, count);
    }
    let r = census_selftest(&FiniteGroup::trivial(3)).unwrap();
    assert_eq!((r.reduced, r.exhaustive), (0, 0));
}

#[test]
fn empty_row_is_zero() {
    let row = census_row(&[]);
    assert_eq!(row.total, CensusCell::default());
    assert!(row.by_rank.is_empty());
    assert_eq!(row.rank(4).to_string(), "0");
}

#[test]
fn dihedral_group_has_one_rank_two_string() {
    let d = 5;
    let a = Perm::parse_cycles(d, "(2,5)(3,4)").unwrap();
    let b = Perm::parse_cycles(d, "(1,2)(3,5)").unwrap();
    let g = FiniteGroup::new(d, vec![a, b]).unwrap();
    let recs = enumerate_cstrings(&g, 2, usize::MAX).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].schlafli.0, vec![5]);
    assert!(recs[0].self_dual);
}

#[test]
fn rank_window_filters() {
    let c = coxeter_group(CoxeterFamily::D, 5).unwrap();
    let recs = enumerate_cstrings(&c.group, 4, 4).unwrap();
    assert_eq!(census_row(&recs).total.to_string(), "16(0)[14]");
}

#[test]
fn checkpoint_resume_matches_uninterrupted() {
    let c = coxeter_group(CoxeterFamily::B, 4).unwrap();
    let full = enumerate_cstrings(&c.group, 2, usize::MAX).unwrap();

    let mut census = Census::new(c.group.clone(), CensusOptions::default(), Caps::default()).unwrap();
    let mut ticks = 0;
    let done = census.run(&mut || {
        ticks += 1;
        ticks > 3
    });
    assert!(!done);
    assert_eq!(census.progress().0, 3);
    let cp = census.checkpoint();

    let mut resumed = Census::resume(c.group.clone(), Caps::default(), &cp).unwrap();
    assert_eq!(resumed.checkpoint(), cp);
    assert!(resumed.run(&mut || false));
    assert_eq!(resumed.finish().unwrap(), full);

    let other = coxeter_group(CoxeterFamily::B, 3).unwrap();
    assert!(matches!(
        Census::resume(other.group, Caps::default(), &cp),
        Err(CensusError::CheckpointMismatch)
    ));
}

#[test]
fn census_respects_its_cap() {
    let c = coxeter_group(CoxeterFamily::B, 4).unwrap();
    let caps = Caps {
        census: 100,
        ..Caps::default()
    };
    assert!(Census::new(c.group, CensusOptions::default(), caps).is_err());
}

#[test]
#[ignore]
fn extended_rows() {
    let (_, b6) = census_of(CoxeterFamily::B, 6);
    assert_eq!(census_row(&b6).total.to_string(), "130(0)[0]");
    let (_, d6) = census_of(CoxeterFamily::D, 6);
    let row = census_row(&d6);
    assert_eq!(row.total.total, 132);
    assert_eq!(row.total.unravelled, 2);
    assert_eq!(row.total.self_dual, 4);
}
