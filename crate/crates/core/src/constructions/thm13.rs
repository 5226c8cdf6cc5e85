//! Strings with Schläfli symbol `[4, p, 4]` in `SL₃(p) ⋊ ⟨t⟩` for primes
//! `p ≡ 1 mod 3`, `p ≡ 5 mod 8`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ambient::{mat3, Ambient};
use super::{ConstructionError, LemmaReport};
use crate::cstring::{Axiom, CString, Outcome, SchlafliSymbol, UnravelledVerdict};
use crate::engine::{Perm, Quotient};
use crate::ff::{is_prime, FieldContext, FieldElement};
use crate::linalg::GfMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm13Constants {
    /// Order 3.
    pub rho: FieldElement,
    /// Square root of −1.
    pub iota: FieldElement,
    /// `α² = (1 + ρ²)⁻¹ = −ρ²`.
    pub alpha: FieldElement,
    pub lambda: FieldElement,
    pub epsilon: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
    pub mu: FieldElement,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Thm13Constants {
    fn new(f: &FieldContext, rho: FieldElement, iota: FieldElement, alpha: FieldElement) -> Result<Self, ConstructionError> {
        let one = f.one();
        let two = f.from_int(2);
        let half = f.inv(&two)?;
        let rho2 = f.mul(&rho, &rho);
        // λ = α(ι + 1)(−1 + ρ − ιρ²)
        let lambda = f.mul(
            &f.mul(&alpha, &f.add(&iota, &one)),
            &f.sub(&f.sub(&rho, &one), &f.mul(&iota, &rho2)),
        );
        let l2 = f.mul(&lambda, &lambda);
        let epsilon = f.neg(&f.mul(&iota, &lambda));
        let beta = f.neg(&f.mul(&f.mul(&l2, &iota), &half));
        let gamma = f.sub(&f.mul(&l2, &half), &one);
        let delta = f.neg(&f.add(&one, &f.mul(&l2, &half)));
        let mu = f.sub(&one, &rho);
        // a = 2(2ρ² + (1 − ρ)ι)⁻¹
        let a = f.mul(&two, &f.inv(&f.add(&f.mul(&two, &rho2), &f.mul(&mu, &iota)))?);
        let a_inv = f.inv(&a)?;
        let x = f.neg(&f.mul(&f.mul(&a, &rho), &f.mul(&mu, &half)));
        let y = f.neg(&f.mul(&x, &rho));
        let x2 = f.mul(&x, &x);
        let b = f.mul(&a_inv, &f.add(&rho2, &x2));
        let c = f.mul(&a_inv, &f.add(&one, &f.mul(&x2, &rho)));
        let d = f.mul(&a, &rho);
        Ok(Self {
            rho,
            iota,
            alpha,
            lambda,
            epsilon,
            beta,
            gamma,
            delta,
            mu,
            a,
            b,
            c,
            d,
            x,
            y,
        })
    }
}

struct Matrices {
    t: [GfMatrix; 4],
    r: GfMatrix,
    g0: GfMatrix,
    z: GfMatrix,
}

fn matrices(f: &FieldContext, k: &Thm13Constants) -> Matrices {
    let zero = f.zero();
    let one = f.one();
    let m1 = f.neg(&one);
    let rho2 = f.mul(&k.rho, &k.rho);
    let ar = f.neg(&f.mul(&k.alpha, &k.rho));

    let x = mat3(f, [[&zero, &k.alpha, &ar], [&k.alpha, &k.rho, &one], [&ar, &one, &rho2]]);
    let t1 = GfMatrix::block_antidiag(&x, &x);
    let t2 = GfMatrix::diag(f, &[one.clone(), m1.clone(), m1.clone(), one.clone(), m1.clone(), m1.clone()]);
    let y = mat3(f, [[&one, &k.lambda, &k.epsilon], [&k.lambda, &k.gamma, &k.beta], [&k.epsilon, &k.beta, &k.delta]]);
    let t3 = GfMatrix::block_diag(&y, &y);
    let neg_rho = f.neg(&k.rho);
    let neg_rho2 = f.neg(&rho2);
    let mu_rho2 = f.neg(&f.mul(&k.mu, &rho2));
    let upper = mat3(f, [[&neg_rho, &zero, &zero], [&zero, &zero, &k.rho], [&zero, &k.rho, &mu_rho2]]);
    let lower = mat3(f, [[&neg_rho2, &zero, &zero], [&zero, &k.mu, &rho2], [&zero, &rho2, &zero]]);
    let t4 = GfMatrix::block_antidiag(&upper, &lower);
    let r = GfMatrix::block_antidiag(
        &mat3(f, [[&k.rho, &zero, &zero], [&zero, &k.a, &k.x], [&zero, &k.x, &k.b]]),
        &mat3(f, [[&rho2, &zero, &zero], [&zero, &k.c, &k.y], [&zero, &k.y, &k.d]]),
    );
    let kk = mat3(f, [[&one, &zero, &zero], [&zero, &zero, &m1], [&zero, &one, &zero]]);
    let g0 = GfMatrix::block_antidiag(&kk, &kk);
    let z = GfMatrix::diag(f, &[k.rho.clone(), k.rho.clone(), k.rho.clone(), rho2.clone(), rho2.clone(), rho2]);
    Matrices {
        t: [t1, t2, t3, t4],
        r,
        g0,
        z,
    }
}

fn matrices_consistent(m: &Matrices, t: &GfMatrix, p: u64) -> bool {
    let [t1, t2, t3, t4] = &m.t;
    let ord = |a: &GfMatrix, b: &GfMatrix| a.mul(b).order(4 * p + 8);
    m.t.iter().chain([&m.r]).all(|x| x.mul(x).is_identity() && !x.is_identity())
        && t1.commutes_with(t3)
        && t1.commutes_with(t4)
        && t2.commutes_with(t4)
        && ord(t1, t2) == Some(4)
        && ord(t3, t4) == Some(4)
        && ord(t2, t3) == Some(p)
        && [t1, t2, t3, &m.g0].iter().all(|x| x.commutes_with(t))
        && [t2, t3, t4, &m.z.mul(&m.g0)].iter().all(|x| x.commutes_with(&m.r))
}

pub struct Thm13Instance {
    pub p: u64,
    pub constants: Thm13Constants,
    pub generators: [GfMatrix; 4],
    pub r: GfMatrix,
    /// Order-4 element whose image witnesses the failure of the intersection
    /// property modulo the centre.
    pub g0: GfMatrix,
    pub ambient: Ambient,
    pub r_perm: Perm,
    pub string: CString,
}

pub fn build_thm13(p: u64) -> Result<Thm13Instance, ConstructionError> {
    if !is_prime(p) || p % 3 != 1 || p % 8 != 5 {
        return Err(ConstructionError::CongruenceFail(p));
    }
    let f = FieldContext::new(p, 1)?;
    let rhos: Vec<FieldElement> = f.elements().filter(|x| f.order(x) == Ok(3)).collect();
    let iotas: Vec<FieldElement> = f.elements().filter(|x| f.order(x) == Ok(4)).collect();
    let id = GfMatrix::identity(&f, 3);
    let t = GfMatrix::block_antidiag(&id, &id);
    let mut chosen = None;
    'search: for rho in &rhos {
        let a2 = f.inv(&f.add(&f.one(), &f.mul(rho, rho)))?;
        let Some(alpha0) = f.sqrt(&a2) else { continue };
        for iota in &iotas {
            for alpha in [alpha0.clone(), f.neg(&alpha0)] {
                let k = Thm13Constants::new(&f, rho.clone(), iota.clone(), alpha)?;
                let m = matrices(&f, &k);
                if matrices_consistent(&m, &t, p) {
                    chosen = Some((k, m));
                    break 'search;
                }
            }
        }
    }
    let (constants, m) = chosen.ok_or(ConstructionError::NoValidRoots)?;
    let ambient = Ambient::new(&f, m.z.clone())?;
    let perms = m
        .t
        .iter()
        .map(|x| ambient.perm(x))
        .collect::<Result<Vec<_>, _>>()?;
    let r_perm = ambient.perm(&m.r)?;
    let string = CString::new(ambient.g.clone(), perms)?;
    Ok(Thm13Instance {
        p,
        constants,
        generators: m.t,
        r: m.r,
        g0: m.g0,
        ambient,
        r_perm,
        string,
    })
}

impl Thm13Instance {
    pub fn expected_schlafli(&self) -> SchlafliSymbol {
        SchlafliSymbol(vec![4, self.p, 4])
    }

    /// `p(p² − 1) = |PGL₂(p)|`.
    pub fn expected_parabolic_order(&self) -> u128 {
        let p = self.p as u128;
        p * (p * p - 1)
    }

    pub fn lemma_chain(&self) -> Result<(LemmaReport, UnravelledVerdict), ConstructionError> {
        let p = self.p;
        let [t1, t2, t3, t4] = &self.generators;
        let t = &self.ambient.t;
        let r = &self.r;
        let g0 = &self.g0;
        let zg0 = self.ambient.z.mul(g0);
        let cs = &self.string;
        let g = &self.ambient.g;
        let mut rep = LemmaReport::default();

        let invol = self.generators.iter().chain([r]).all(|x| x.mul(x).is_identity());
        rep.push("involutions", invol, format!("t1..t4 and r square to the identity: {invol}"));
        let dims: Vec<usize> = self.generators.iter().chain([r]).map(GfMatrix::fixed_space_dim).collect();
        rep.push(
            "involution_classes",
            dims == [3, 2, 2, 3, 3],
            format!("fixed-space dimensions of t1..t4, r: {dims:?}, expected [3, 2, 2, 3, 3]"),
        );
        rep.push("t1_t3_commute", t1.commutes_with(t3), format!("{}", t1.commutes_with(t3)));
        rep.push("t1_t4_commute", t1.commutes_with(t4), format!("{}", t1.commutes_with(t4)));
        rep.push("t2_t4_commute", t2.commutes_with(t4), format!("{}", t2.commutes_with(t4)));
        let o12 = t1.mul(t2).order(64);
        rep.push("t1t2_order", o12 == Some(4), format!("order(t1·t2) = {o12:?}"));
        let o34 = t3.mul(t4).order(64);
        rep.push("t3t4_order", o34 == Some(4), format!("order(t3·t4) = {o34:?}"));
        let o23 = t2.mul(t3).order(4 * p + 8);
        rep.push("t2t3_order", o23 == Some(p), format!("order(t2·t3) = {o23:?}, expected {p}"));

        let ct = [t1, t2, t3].iter().all(|x| x.commutes_with(t));
        rep.push("centralize_t", ct, format!("t1, t2, t3 commute with t: {ct}"));
        let cr = [t2, t3, t4].iter().all(|x| x.commutes_with(r));
        rep.push("centralize_r", cr, format!("t2, t3, t4 commute with r: {cr}"));
        let w = g0.commutes_with(t) && zg0.commutes_with(r);
        rep.push("witness_centralizes", w, format!("g0 commutes with t and z·g0 with r: {w}"));
        let sq = g0.mul(g0) == *t2 && zg0.mul(&zg0) == *t2;
        rep.push("witness_squares", sq, format!("g0² = t2 = (z·g0)²: {sq}"));

        let expect = self.expected_parabolic_order();
        let g123 = cs.parabolic(0b0111)?;
        let g234 = cs.parabolic(0b1110)?;
        rep.push(
            "g123_order",
            g123.order() == expect,
            format!("|G123| = {}, expected {expect}", g123.order()),
        );
        rep.push(
            "g234_order",
            g234.order() == expect,
            format!("|G234| = {}, expected {expect}", g234.order()),
        );
        let g0_perm = self.ambient.perm(g0)?;
        let zg0_perm = self.ambient.perm(&zg0)?;
        let mem = g123.contains(&g0_perm)? && g234.contains(&zg0_perm)?;
        rep.push("witness_membership", mem, format!("g0 ∈ G123 and z·g0 ∈ G234: {mem}"));
        let meet = g123.intersection(&g234, cs.caps().intersection)?.order();
        rep.push(
            "g123_meet_g234",
            meet == 2 * p as u128,
            format!("|G123 ∩ G234| = {meet}, expected {}", 2 * p),
        );

        let report = cs.verify()?;
        rep.push(
            "generation",
            report.generates,
            format!("|<t1..t4>| = {}, |G| = {}", report.generated_order, g.order()),
        );
        let sch = report.schlafli.clone();
        rep.push(
            "cstring",
            report.is_cstring() && sch == self.expected_schlafli(),
            format!("failing axiom {:?}, Schläfli {sch}", report.failing_axiom()),
        );

        let center = &self.ambient.center;
        let qz = Quotient::new(g, center, cs.caps().classes)?;
        let (entry_z, image) = cs.image_in(&qz, center.order())?;
        let bar = qz.image(&g0_perm);
        let bar_order = bar.order();
        let mut witness = bar_order == 4;
        if let Some(im) = &image {
            let in_both = im.parabolic(0b0111)?.contains(&bar)? && im.parabolic(0b1110)?.contains(&bar)?;
            let outside = !im.parabolic(0b0110)?.contains(&bar)?;
            witness &= in_both && outside;
        } else {
            witness = false;
        }
        rep.push(
            "center_quotient_witness",
            witness,
            format!("image of g0 has order {bar_order}, lies in Ḡ123 ∩ Ḡ234 but not Ḡ23: {witness}"),
        );
        rep.push(
            "center_quotient_intersection_fails",
            entry_z.outcome == Outcome::NotCString(Axiom::IntersectionProperty),
            format!("outcome {:?}", entry_z.outcome),
        );
        let h = &self.ambient.h;
        let qh = Quotient::new(g, h, cs.caps().classes)?;
        let (entry_h, _) = cs.image_in(&qh, h.order())?;
        rep.push(
            "sl3_quotient_collapses",
            entry_h.outcome == Outcome::Collapses,
            format!("|G/H| = {}, outcome {:?}", entry_h.quotient_order, entry_h.outcome),
        );
        let verdict = UnravelledVerdict::from_entries(vec![entry_z, entry_h]);
        rep.push("unravelled", verdict.unravelled, format!("{}", verdict.unravelled));
        Ok((rep, verdict))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_of_corner_entry_matters() {
        let f = FieldContext::new(13, 1).unwrap();
        let rho = f.element_of_order(3).unwrap();
        let rho2 = f.mul(&rho, &rho);
        let alpha = f.sqrt(&f.neg(&rho2)).unwrap();
        let ar = f.mul(&alpha, &rho);
        let nar = f.neg(&ar);
        let one = f.one();
        let zero = f.zero();
        let sym = mat3(&f, [[&zero, &alpha, &nar], [&alpha, &rho, &one], [&nar, &one, &rho2]]);
        assert!(sym.mul(&sym).is_identity());
        let skew = mat3(&f, [[&zero, &alpha, &nar], [&alpha, &rho, &one], [&ar, &one, &rho2]]);
        assert!(!skew.mul(&skew).is_identity());
    }
}
