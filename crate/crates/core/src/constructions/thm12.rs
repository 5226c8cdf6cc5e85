//! Strings with Schläfli symbol `[4, q+1, 4]` in `SL₃(q) ⋊ ⟨t⟩`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ambient::{mat3, Ambient};
use super::{ConstructionError, LemmaReport};
use crate::cstring::{Axiom, CString, Outcome, SchlafliSymbol, UnravelledVerdict};
use crate::engine::{Perm, Quotient};
use crate::ff::{FieldContext, FieldElement};
use crate::linalg::GfMatrix;

/// The three field conditions on `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub q: u64,
    /// `6 | q − 1`.
    pub six_divides: bool,
    /// Solutions of `2λ² = 1` and `2μ² = λ²`, when they exist.
    pub lambda: Option<FieldElement>,
    pub mu: Option<FieldElement>,
    /// Multiplicative orders in `GF(q²)` of `−1/3 ± √(1/9 − 1)`.
    pub eigen_orders: Option<[u64; 2]>,
    /// One of those orders is `q + 1`.
    pub order_condition: bool,
}

impl ConditionReport {
    pub fn square_roots_exist(&self) -> bool {
        self.lambda.is_some() && self.mu.is_some()
    }

    pub fn all_hold(&self) -> bool {
        self.six_divides && self.square_roots_exist() && self.order_condition
    }
}

pub fn check_thm12_conditions(q: u64) -> Result<ConditionReport, ConstructionError> {
    let f = FieldContext::of_order(q)?;
    let six_divides = (q - 1).is_multiple_of(6);
    let mut report = ConditionReport {
        q,
        six_divides,
        lambda: None,
        mu: None,
        eigen_orders: None,
        order_condition: false,
    };
    if !six_divides {
        // characteristic 2 or 3: the constants below are undefined
        return Ok(report);
    }
    let half = f.inv(&f.from_int(2))?;
    report.lambda = f.sqrt(&half);
    if let Some(l) = &report.lambda {
        report.mu = f.sqrt(&f.mul(&f.mul(l, l), &half));
    }
    let ext = FieldContext::new(f.characteristic(), 2 * f.degree())?;
    let third = ext.inv(&ext.from_int(3))?;
    let a = ext.neg(&third);
    let disc = ext.sub(&ext.mul(&third, &third), &ext.one());
    let s = ext.sqrt(&disc).expect("elements of GF(q) are squares in GF(q²)");
    let orders = [ext.order(&ext.add(&a, &s))?, ext.order(&ext.sub(&a, &s))?];
    report.order_condition = orders.contains(&(q + 1));
    report.eigen_orders = Some(orders);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm12Constants {
    pub rho: FieldElement,
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub xi: FieldElement,
    pub eta: FieldElement,
    pub tau: FieldElement,
}

impl Thm12Constants {
    fn new(f: &FieldContext, rho: FieldElement, lambda: FieldElement, mu: FieldElement) -> Result<Self, ConstructionError> {
        let half = f.inv(&f.from_int(2))?;
        let mu_inv = f.inv(&mu)?;
        let alpha = f.inv(&f.sub(&f.mul(&mu_inv, &mu_inv), &f.one()))?;
        let beta = f.mul(&f.mul(&f.from_int(2), &alpha), &f.mul(&lambda, &mu_inv));
        let rho2 = f.mul(&rho, &rho);
        let eta = f.mul(&f.sub(&f.one(), &rho2), &half);
        let xi = f.add(&rho2, &eta);
        let tau = f.mul(&rho2, &rho2);
        Ok(Self {
            rho,
            lambda,
            mu,
            alpha,
            beta,
            xi,
            eta,
            tau,
        })
    }
}

struct Matrices {
    t: [GfMatrix; 4],
    r: GfMatrix,
    z: GfMatrix,
}

fn matrices(f: &FieldContext, c: &Thm12Constants) -> Result<Matrices, ConstructionError> {
    let neg = |x: &FieldElement| f.neg(x);
    let zero = f.zero();
    let one = f.one();
    let m1 = f.neg(&one);
    let rho_inv = f.inv(&c.rho)?;
    let rho_m2 = f.mul(&rho_inv, &rho_inv);
    let rho2 = f.mul(&c.rho, &c.rho);

    let m = mat3(f, [[&c.mu, &c.lambda, &c.mu], [&c.lambda, &zero, &neg(&c.lambda)], [&c.mu, &neg(&c.lambda), &c.mu]]);
    let t1 = GfMatrix::block_antidiag(&m, &m);
    let t2 = GfMatrix::diag(f, &[m1.clone(), one.clone(), m1.clone(), m1.clone(), one.clone(), m1.clone()]);
    let x = mat3(f, [[&c.alpha, &c.beta, &zero], [&c.beta, &neg(&c.alpha), &zero], [&zero, &zero, &m1]]);
    let t3 = GfMatrix::block_diag(&x, &x);
    let upper = mat3(f, [[&c.xi, &zero, &c.eta], [&zero, &c.tau, &zero], [&c.eta, &zero, &c.xi]]);
    let xi_r = f.mul(&c.xi, &rho_m2);
    let eta_r = f.mul(&c.eta, &c.rho);
    let tau_r = f.mul(&c.tau, &rho_m2);
    let lower = mat3(f, [[&xi_r, &zero, &eta_r], [&zero, &tau_r, &zero], [&eta_r, &zero, &xi_r]]);
    let t4 = GfMatrix::block_antidiag(&upper, &lower);
    let r = GfMatrix::block_antidiag(
        &GfMatrix::diag(f, &[c.rho.clone(), c.rho.clone(), rho_m2.clone()]),
        &GfMatrix::diag(f, &[rho_inv.clone(), rho_inv.clone(), rho2.clone()]),
    );
    let z = GfMatrix::diag(f, &[rho_m2.clone(), rho_m2.clone(), rho_m2, rho2.clone(), rho2.clone(), rho2]);
    Ok(Matrices {
        t: [t1, t2, t3, t4],
        r,
        z,
    })
}

/// The identities the generators must satisfy, checked on matrices.
fn matrices_consistent(m: &Matrices, t: &GfMatrix, q: u64) -> bool {
    let [t1, t2, t3, t4] = &m.t;
    let ord = |a: &GfMatrix, b: &GfMatrix| a.mul(b).order(4 * q + 8);
    m.t.iter().all(|x| x.mul(x).is_identity() && !x.is_identity())
        && t1.commutes_with(t3)
        && t1.commutes_with(t4)
        && t2.commutes_with(t4)
        && ord(t1, t2) == Some(4)
        && ord(t3, t4) == Some(4)
        && ord(t2, t3) == Some(q + 1)
        && [t1, t2, t3].iter().all(|x| x.commutes_with(t))
        && [t2, t3, t4].iter().all(|x| x.commutes_with(&m.r))
}

pub struct Thm12Instance {
    pub q: u64,
    pub conditions: ConditionReport,
    pub constants: Thm12Constants,
    pub generators: [GfMatrix; 4],
    pub r: GfMatrix,
    pub ambient: Ambient,
    pub r_perm: Perm,
    pub string: CString,
}

/// Builds the string for `q`, taking the first root choice (in the order
/// of field indices) whose matrices satisfy the required identities.
pub fn build_thm12(q: u64) -> Result<Thm12Instance, ConstructionError> {
    let conditions = check_thm12_conditions(q)?;
    if !conditions.all_hold() {
        return Err(ConstructionError::ConditionsFail(q));
    }
    let f = FieldContext::of_order(q)?;
    let lambda0 = conditions.lambda.clone().expect("checked");
    let mu0 = conditions.mu.clone().expect("checked");
    let rhos: Vec<FieldElement> = f.elements().filter(|x| f.order(x) == Ok(6)).collect();
    let id = GfMatrix::identity(&f, 3);
    let t = GfMatrix::block_antidiag(&id, &id);
    let mut chosen = None;
    'search: for rho in &rhos {
        for lambda in [lambda0.clone(), f.neg(&lambda0)] {
            for mu in [mu0.clone(), f.neg(&mu0)] {
                let c = Thm12Constants::new(&f, rho.clone(), lambda.clone(), mu)?;
                let m = matrices(&f, &c)?;
                if matrices_consistent(&m, &t, q) {
                    chosen = Some((c, m));
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
    Ok(Thm12Instance {
        q,
        conditions,
        constants,
        generators: m.t,
        r: m.r,
        ambient,
        r_perm,
        string,
    })
}

impl Thm12Instance {
    pub fn expected_schlafli(&self) -> SchlafliSymbol {
        SchlafliSymbol(vec![4, self.q + 1, 4])
    }

    /// `2q(q² − 1)`, the order of `C_G(t)`.
    pub fn expected_parabolic_order(&self) -> u128 {
        let q = self.q as u128;
        2 * q * (q * q - 1)
    }

    /// Runs every checkable claim; also returns the unravelledness verdict.
    pub fn lemma_chain(&self) -> Result<(LemmaReport, UnravelledVerdict), ConstructionError> {
        let q = self.q;
        let [t1, t2, t3, t4] = &self.generators;
        let t = &self.ambient.t;
        let r = &self.r;
        let g = &self.ambient.g;
        let cs = &self.string;
        let mut rep = LemmaReport::default();

        let invol = self.generators.iter().all(|x| x.mul(x).is_identity());
        rep.push("involutions", invol, format!("t1..t4 square to the identity: {invol}"));
        let dims: Vec<usize> = self.generators.iter().map(GfMatrix::fixed_space_dim).collect();
        rep.push(
            "involution_classes",
            dims == [3, 2, 2, 3],
            format!("fixed-space dimensions {dims:?}, expected [3, 2, 2, 3]"),
        );

        let tr = t.mul(r);
        let tr_order = tr.order(64);
        rep.push("tr_order", tr_order == Some(6), format!("order(t·r) = {tr_order:?}"));
        let tr2 = self.ambient.perm(&tr.mul(&tr))?;
        let central = self.ambient.center.contains(&tr2)?;
        rep.push("tr_squared_central", central, format!("(t·r)² ∈ Z(H): {central}"));

        let ct = [t1, t2, t3].iter().all(|x| x.commutes_with(t));
        rep.push("centralize_t", ct, format!("t1, t2, t3 commute with t: {ct}"));
        let cr = [t2, t3, t4].iter().all(|x| x.commutes_with(r));
        rep.push("centralize_r", cr, format!("t2, t3, t4 commute with r: {cr}"));

        let o23 = t2.mul(t3).order(4 * q + 8);
        rep.push("t2t3_order", o23 == Some(q + 1), format!("order(t2·t3) = {o23:?}, expected {}", q + 1));
        let g23 = cs.parabolic(0b0110)?.order();
        rep.push(
            "g23_order",
            g23 == 2 * (q as u128 + 1),
            format!("|<t2,t3>| = {g23}, expected {}", 2 * (q + 1)),
        );
        let o12 = t1.mul(t2).order(64);
        rep.push("t1t2_order", o12 == Some(4), format!("order(t1·t2) = {o12:?}"));
        rep.push("t1_t3_commute", t1.commutes_with(t3), format!("{}", t1.commutes_with(t3)));
        rep.push("t2_t4_commute", t2.commutes_with(t4), format!("{}", t2.commutes_with(t4)));
        rep.push("t1_t4_commute", t1.commutes_with(t4), format!("{}", t1.commutes_with(t4)));
        let o34 = t3.mul(t4).order(64);
        rep.push("t3t4_order", o34 == Some(4), format!("order(t3·t4) = {o34:?}"));

        let comm = t1.commutator(t2)?;
        let outside = !comm.commutes_with(r);
        rep.push("commutator_t1t2_not_in_centralizer_r", outside, format!("[t1,t2] commutes with r: {}", !outside));

        let expect = self.expected_parabolic_order();
        let g123 = cs.parabolic(0b0111)?.order();
        let g234 = cs.parabolic(0b1110)?.order();
        rep.push("g123_order", g123 == expect, format!("|G123| = {g123}, expected {expect}"));
        rep.push("g234_order", g234 == expect, format!("|G234| = {g234}, expected {expect}"));
        let meet = cs
            .parabolic(0b0111)?
            .intersection(&*cs.parabolic(0b1110)?, cs.caps().intersection)?
            .order();
        rep.push(
            "g123_meet_g234",
            meet == 2 * (q as u128 + 1),
            format!("|G123 ∩ G234| = {meet}, expected {}", 2 * (q + 1)),
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

        // G/Z(H): distinct involutions, but the intersection property fails
        let center = &self.ambient.center;
        let qz = Quotient::new(g, center, cs.caps().classes)?;
        let (entry_z, image) = cs.image_in(&qz, center.order())?;
        rep.push(
            "center_quotient_distinct_involutions",
            entry_z.outcome != Outcome::Collapses,
            format!("outcome {:?}", entry_z.outcome),
        );
        let image_meet = match &image {
            Some(im) => Some(
                im.parabolic(0b0111)?
                    .intersection(&*im.parabolic(0b1110)?, cs.caps().intersection)?
                    .order(),
            ),
            None => None,
        };
        let ip_fails = entry_z.outcome == Outcome::NotCString(Axiom::IntersectionProperty)
            && image_meet.is_some_and(|m| m > 2 * (q as u128 + 1));
        rep.push(
            "center_quotient_intersection_fails",
            ip_fails,
            format!("|Ḡ123 ∩ Ḡ234| = {image_meet:?}, must exceed {}", 2 * (q + 1)),
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
