use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::ConstructionError;
use crate::engine::{BlockAction, FiniteGroup, Perm};
use crate::ff::{FieldContext, FieldElement};
use crate::linalg::GfMatrix;

/// `|SL₃(q)| = q³(q³ − 1)(q² − 1)`.
pub fn sl3_order(q: u64) -> u128 {
    let q = q as u128;
    q * q * q * (q * q * q - 1) * (q * q - 1)
}

/// `G = SL₃(q) ⋊ ⟨t⟩` acting on the nonzero vectors of `U ∪ U*`, where `A`
/// embeds as `diag(A, A^{-T})` and `t` swaps the two halves.
pub struct Ambient {
    pub ctx: FieldContext,
    pub action: BlockAction,
    pub g: Rc<FiniteGroup>,
    /// `H = SL₃(q)`.
    pub h: FiniteGroup,
    /// The transvections generating `H`, embedded in dimension 6.
    pub h_gens: Vec<GfMatrix>,
    /// `Z(H)`, generated by `z`.
    pub center: FiniteGroup,
    pub t: GfMatrix,
    pub t_perm: Perm,
    pub z: GfMatrix,
}

pub(crate) fn mat3(ctx: &FieldContext, rows: [[&FieldElement; 3]; 3]) -> GfMatrix {
    GfMatrix::from_entries(ctx, rows.iter().flat_map(|r| r.iter().map(|&x| x.clone())).collect())
}

/// `diag(A, A^{-T})`.
pub(crate) fn embed_sl3(a: &GfMatrix) -> Result<GfMatrix, ConstructionError> {
    Ok(GfMatrix::block_diag(a, &a.inverse()?.transpose()))
}

fn transvection(ctx: &FieldContext, i: usize, j: usize, c: &FieldElement) -> GfMatrix {
    let mut m = GfMatrix::identity(ctx, 3);
    m.set(i, j, c.clone());
    m
}

impl Ambient {
    /// `z` must be a block-diagonal generator of `Z(H)`.
    pub fn new(ctx: &FieldContext, z: GfMatrix) -> Result<Self, ConstructionError> {
        let action = BlockAction::new(ctx, 6)?;
        // 1, ω, …, ω^(k−1) span GF(q) over GF(p), so these transvections
        // fill every root subgroup
        let omega = ctx.element_of_order(ctx.size() - 1)?;
        let scalars: Vec<FieldElement> = (0..ctx.degree() as u64).map(|e| ctx.pow(&omega, e)).collect();
        let mut h_gens = Vec::new();
        for c in &scalars {
            for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
                h_gens.push(embed_sl3(&transvection(ctx, i, j, c))?);
            }
        }
        let sl3 = h_gens.iter().map(|m| action.perm_of(m)).collect::<Result<Vec<_>, _>>()?;
        let id = GfMatrix::identity(ctx, 3);
        let t = GfMatrix::block_antidiag(&id, &id);
        let t_perm = action.perm_of(&t)?;
        let mut gens = sl3.clone();
        gens.push(t_perm.clone());
        let q = ctx.size();
        let g = FiniteGroup::with_known_order(action.degree(), gens, 2 * sl3_order(q))?;
        if !g.is_certified() {
            return Err(ConstructionError::Uncertified);
        }
        let h = g.subgroup_with_order_bound(sl3, sl3_order(q))?;
        if !h.is_certified() {
            return Err(ConstructionError::Uncertified);
        }
        let center = g.subgroup(vec![action.perm_of(&z)?])?;
        Ok(Self {
            ctx: ctx.clone(),
            action,
            g: Rc::new(g),
            h,
            h_gens,
            center,
            t,
            t_perm,
            z,
        })
    }

    pub fn perm(&self, m: &GfMatrix) -> Result<Perm, ConstructionError> {
        Ok(self.action.perm_of(m)?)
    }

    /// `[Z(H), H]`, the proper nontrivial normal subgroups of `G`.
    pub fn normal_subgroups(&self) -> Vec<FiniteGroup> {
        vec![self.center.clone(), self.h.clone()]
    }
}
