use polystring_core::constructions::*;
use polystring_core::cstring::SchlafliSymbol;
use polystring_core::ff::FieldContext;
use polystring_core::linalg::GfMatrix;
use polystring_core::polytope::{disc_structure, f_vector};

fn show(report: &LemmaReport) {
    for c in &report.checks {
        eprintln!("{:>5} {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
}

#[test]
fn first_family_q7() {
    let inst = build_thm12(7).unwrap();
    assert_eq!(inst.ambient.g.order(), 11_261_376);
    let (report, verdict) = inst.lemma_chain().unwrap();
    show(&report);
    assert!(report.all_pass());
    assert!(verdict.unravelled);
    assert_eq!(inst.string.schlafli(), SchlafliSymbol(vec![4, 8, 4]));
}

#[test]
fn first_family_build_is_deterministic() {
    let a = build_thm12(7).unwrap();
    let b = build_thm12(7).unwrap();
    assert_eq!(a.generators, b.generators);
    assert_eq!(a.constants, b.constants);
}

#[test]
fn first_family_conditions() {
    let c7 = check_thm12_conditions(7).unwrap();
    assert!(c7.all_hold());
    let f = FieldContext::new(7, 1).unwrap();
    assert_eq!(c7.lambda, Some(f.from_int(2)));
    let c199 = check_thm12_conditions(199).unwrap();
    assert!(c199.six_divides && c199.square_roots_exist() && !c199.order_condition);
    let c13 = check_thm12_conditions(13).unwrap();
    assert!(c13.six_divides && !c13.square_roots_exist());
    assert!(matches!(build_thm12(13), Err(ConstructionError::ConditionsFail(13))));
}

#[test]
fn second_family_p13() {
    let inst = build_thm13(13).unwrap();
    let (report, verdict) = inst.lemma_chain().unwrap();
    show(&report);
    assert!(report.all_pass());
    assert!(verdict.unravelled);
    assert_eq!(inst.string.parabolic(0b0111).unwrap().order(), 2184);
    assert_eq!(inst.string.parabolic(0b0110).unwrap().order(), 26);
}

#[test]
fn second_family_rejects_bad_primes() {
    for p in [7, 17, 19, 15] {
        assert!(matches!(build_thm13(p), Err(ConstructionError::CongruenceFail(_))));
    }
}

#[test]
fn corrupted_generator_fails_the_chain() {
    let mut inst = build_thm13(13).unwrap();
    let t4 = &inst.generators[3];
    let f = t4.ctx().clone();
    let mut bad: GfMatrix = t4.clone();
    let v = f.add(bad.get(0, 3), &f.one());
    bad.set(0, 3, v);
    inst.generators[3] = bad;
    let (report, _) = inst.lemma_chain().unwrap();
    assert!(!report.all_pass());
    assert!(!report.get("involutions").unwrap().passed || !report.get("t2_t4_commute").unwrap().passed);
}

#[test]
fn small_scans() {
    let s = scan_primes(7).unwrap();
    assert_eq!(s.primes, vec![7]);
    assert!(s.failing_primes.is_empty());
    let s = scan_primes(200).unwrap();
    assert_eq!(s.failing_primes, vec![199]);
}

#[test]
fn coxeter_orders_and_symbols() {
    for (fam, n, order) in [
        (CoxeterFamily::B, 3, 48),
        (CoxeterFamily::B, 4, 384),
        (CoxeterFamily::D, 3, 24),
        (CoxeterFamily::D, 4, 192),
        (CoxeterFamily::D, 5, 1920),
    ] {
        let c = coxeter_group(fam, n).unwrap();
        assert_eq!(c.group.order(), order, "{fam}{n}");
    }
    let b3 = coxeter_group(CoxeterFamily::B, 3).unwrap();
    let s = b3.string.unwrap();
    assert!(s.verify().unwrap().is_cstring());
    assert_eq!(s.schlafli(), SchlafliSymbol(vec![3, 4]));
    let d3 = coxeter_group(CoxeterFamily::D, 3).unwrap();
    assert_eq!(d3.string.unwrap().schlafli(), SchlafliSymbol(vec![3, 3]));
    assert!(coxeter_group(CoxeterFamily::D, 4).unwrap().string.is_none());
    assert!(matches!(coxeter_group(CoxeterFamily::B, 2), Err(ConstructionError::RankTooSmall(2))));
}

#[test]
fn degree_27_example() {
    let ex = example55_group().unwrap();
    assert_eq!(ex.group.order(), 1296);
    let cs = &ex.string;
    assert!(cs.verify().unwrap().is_cstring());
    assert_eq!(cs.schlafli(), SchlafliSymbol(vec![4, 3, 4]));
    assert_eq!(f_vector(cs).unwrap().0, vec![1, 27, 81, 81, 27, 1]);
    let d = disc_structure(cs, 10_000).unwrap();
    assert_eq!(
        d.layers,
        vec![4, 9, 17, 28, 42, 60, 81, 105, 129, 147, 157, 155, 138, 109, 71, 33, 9, 1]
    );
    assert_eq!(d.diameter(), 18);
    assert!(cs.is_unravelled(&ex.normals).unwrap().unravelled);
}

#[test]
fn ambient_over_extension_fields() {
    for q in [4u64, 9] {
        let f = FieldContext::of_order(q).unwrap();
        let w = f.element_of_order(q - 1).unwrap();
        let w3 = f.pow(&w, (q - 1) / gcd3(q));
        let wi = f.inv(&w3).unwrap();
        let z = GfMatrix::diag(&f, &[w3.clone(), w3.clone(), w3, wi.clone(), wi.clone(), wi]);
        let amb = Ambient::new(&f, z).unwrap();
        assert_eq!(amb.g.order(), 2 * sl3_order(q));
        assert_eq!(amb.h.order(), sl3_order(q));
        assert_eq!(amb.center.order(), gcd3(q) as u128);
    }
}

fn gcd3(q: u64) -> u64 {
    if (q - 1).is_multiple_of(3) { 3 } else { 1 }
}
