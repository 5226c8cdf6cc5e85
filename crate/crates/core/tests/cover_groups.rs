//! Triple covers of Sym(6) and Sym(7), each carrying one unravelled C-string.

use std::rc::Rc;

use polystring_core::census::{census_row, enumerate_cstrings};
use polystring_core::cstring::{CString, SchlafliSymbol};
use polystring_core::engine::{FiniteGroup, Perm};
use polystring_core::ff::{FieldContext, FieldElement};
use polystring_core::polytope::{disc_structure, f_vector};

/// A [4,6,4] string of a group of shape 3·Sym(7) acting on its 63 vertices.
/// It came from a random search inside SU₃(5) extended by the field
/// automorphism, followed by the coset action on the vertex stabilizer.
pub const TRIPLE_S7_STRING: [&str; 4] = [
    "(2,6)(3,57)(4,53)(5,25)(7,27)(8,46)(9,62)(10,45)(12,17)(13,60)(14,32)(15,34)(16,51)(18,54)(19,52)(20,29)(22,23)(24,39)(26,63)(31,40)(35,37)(36,58)(38,56)(41,42)(47,61)(48,49)",
    "(2,8)(3,51)(4,52)(6,15)(9,27)(10,53)(11,28)(12,57)(13,25)(16,31)(17,40)(18,43)(19,29)(20,45)(21,36)(24,59)(26,47)(33,39)(34,38)(35,41)(37,42)(44,58)(46,56)(54,55)",
    "(2,25)(3,29)(4,22)(5,6)(8,37)(9,56)(10,39)(11,44)(12,19)(14,40)(16,54)(17,52)(18,51)(20,57)(23,53)(24,45)(26,58)(30,33)(31,32)(35,46)(36,63)(38,62)(43,59)(50,55)",
    "(1,30)(2,51)(3,8)(4,53)(6,16)(7,61)(9,26)(10,52)(12,56)(14,48)(15,31)(17,38)(19,45)(20,29)(21,33)(22,23)(24,58)(27,47)(32,49)(34,40)(35,37)(36,39)(41,42)(44,59)(46,57)(62,63)",
];

/// A [4,5,4] string of 3·Sym(6) on the 18 nonzero vectors of a hyperoval
/// in PG(2,4).
pub const TRIPLE_S6_STRING: [&str; 4] = [
    "(1,3)(4,12)(5,11)(6,10)(7,9)(13,15)(16,18)",
    "(1,12)(2,10)(3,11)(4,15)(5,13)(6,14)",
    "(4,10)(5,11)(6,12)(13,16)(14,17)(15,18)",
    "(1,15)(2,14)(3,13)(4,12)(5,11)(6,10)(7,18)(8,17)(9,16)",
];

type Vec3 = [FieldElement; 3];

/// Hyperoval stabilizer in SL₃(4) extended by the Frobenius map, acting on
/// the 18 vectors spanning the hyperoval points.
fn hyperoval_group() -> FiniteGroup {
    let f = FieldContext::new(2, 2).unwrap();
    let els: Vec<FieldElement> = f.elements().collect();
    let mut reps: Vec<Vec3> = els.iter().map(|t| [f.one(), t.clone(), f.mul(t, t)]).collect();
    reps.push([f.zero(), f.zero(), f.one()]);
    reps.push([f.zero(), f.one(), f.zero()]);
    let mut pts: Vec<Vec3> = Vec::new();
    for r in &reps {
        for s in els.iter().filter(|s| !s.is_zero()) {
            pts.push([f.mul(s, &r[0]), f.mul(s, &r[1]), f.mul(s, &r[2])]);
        }
    }
    let find = |v: &Vec3| pts.iter().position(|p| p == v).map(|i| i as u32);
    let mut gens = Vec::new();
    for code in 0..1u64 << 18 {
        let m: [[FieldElement; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| f.from_index((code >> (2 * (3 * i + j))) & 3)));
        let t = |a: usize, b: usize, c: usize| f.mul(&f.mul(&m[0][a], &m[1][b]), &m[2][c]);
        let det = f.sub(
            &f.add(&f.add(&t(0, 1, 2), &t(1, 2, 0)), &t(2, 0, 1)),
            &f.add(&f.add(&t(2, 1, 0), &t(0, 2, 1)), &t(1, 0, 2)),
        );
        if det != f.one() {
            continue;
        }
        let image = |v: &Vec3| -> Vec3 {
            std::array::from_fn(|j| (0..3).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&v[i], &m[i][j]))))
        };
        let imgs: Option<Vec<u32>> = pts.iter().map(|v| find(&image(v))).collect();
        if let Some(imgs) = imgs {
            gens.push(Perm::from_images(imgs).unwrap());
        }
    }
    assert_eq!(gens.len(), 1080);
    let frob = pts.iter().map(|v| find(&[f.mul(&v[0], &v[0]), f.mul(&v[1], &v[1]), f.mul(&v[2], &v[2])]).unwrap());
    gens.push(Perm::from_images(frob.collect()).unwrap());
    FiniteGroup::new(18, gens).unwrap()
}

fn from_cycles(degree: usize, cycles: &[&str]) -> (Rc<FiniteGroup>, CString) {
    let gens: Vec<Perm> = cycles.iter().map(|c| Perm::parse_cycles(degree, c).unwrap()).collect();
    let g = Rc::new(FiniteGroup::new(degree, gens.clone()).unwrap());
    let cs = CString::new(g.clone(), gens).unwrap();
    (g, cs)
}

#[test]
fn hyperoval_group_has_the_expected_row() {
    let g = hyperoval_group();
    assert_eq!(g.order(), 2160);
    let recs = enumerate_cstrings(&g, 2, usize::MAX).unwrap();
    let row = census_row(&recs);
    assert_eq!(row.total.to_string(), "11(3)[1]");
    assert_eq!(row.rank(3).to_string(), "3(1)[0]");
    assert_eq!(row.rank(4).to_string(), "8(2)[1]");
    let unr: Vec<_> = recs.iter().filter(|r| r.unravelled).collect();
    assert_eq!(unr.len(), 1);
    assert_eq!(unr[0].schlafli, SchlafliSymbol(vec![4, 5, 4]));
    let fixture: Vec<Perm> = TRIPLE_S6_STRING.iter().map(|c| Perm::parse_cycles(18, c).unwrap()).collect();
    assert!(g.tuple_extends_to_automorphism(&unr[0].generators, &fixture).unwrap());
}

#[test]
fn triple_s6_string() {
    let (g, cs) = from_cycles(18, &TRIPLE_S6_STRING);
    assert_eq!(g.order(), 2160);
    assert!(cs.verify().unwrap().is_cstring());
    assert_eq!(cs.schlafli(), SchlafliSymbol(vec![4, 5, 4]));
    assert_eq!(f_vector(&cs).unwrap().0, vec![1, 18, 135, 135, 18, 1]);
    let d = disc_structure(&cs, 10_000).unwrap();
    assert_eq!(d.layers, vec![4, 9, 18, 34, 61, 108, 162, 218, 303, 358, 373, 276, 154, 70, 9, 2]);
    assert_eq!(d.diameter(), 16);
    assert_eq!(d.layers.iter().sum::<usize>() + 1, 2160);
    assert_eq!(cs.parabolic(0b0111).unwrap().order(), 120);
    assert_eq!(cs.parabolic(0b1110).unwrap().order(), 120);
}

#[test]
fn triple_s7_string() {
    let (g, cs) = from_cycles(63, &TRIPLE_S7_STRING);
    assert_eq!(g.order(), 15120);
    assert!(cs.verify().unwrap().is_cstring());
    assert_eq!(cs.schlafli(), SchlafliSymbol(vec![4, 6, 4]));
    assert_eq!(f_vector(&cs).unwrap().0, vec![1, 63, 945, 945, 63, 1]);
    let d = disc_structure(&cs, 100_000).unwrap();
    assert_eq!(
        d.layers,
        vec![4, 9, 18, 34, 62, 113, 204, 366, 601, 963, 1453, 2036, 2562, 2696, 2005, 1219, 514, 188, 57, 10, 4, 1]
    );
    assert_eq!(d.layers.iter().sum::<usize>() + 1, 15120);
    assert_eq!(cs.parabolic(0b0111).unwrap().order(), 240);
}

#[test]
fn triple_s7_row() {
    let (g, _) = from_cycles(63, &TRIPLE_S7_STRING);
    let recs = enumerate_cstrings(&g, 2, usize::MAX).unwrap();
    let row = census_row(&recs);
    assert_eq!(row.total.to_string(), "167(5)[1]");
    assert_eq!(row.rank(3).to_string(), "142(4)[0]");
    assert_eq!(row.rank(4).to_string(), "23(1)[1]");
    assert_eq!(row.rank(5).to_string(), "2(0)[0]");
    let unr: Vec<_> = recs.iter().filter(|r| r.unravelled).collect();
    assert_eq!(unr.len(), 1);
    assert_eq!(unr[0].schlafli, SchlafliSymbol(vec![4, 6, 4]));
}
