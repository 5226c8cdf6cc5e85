//! Permutation representations of block-shaped matrix groups.
//!
//! A `2h × 2h` matrix of shape `[[A, 0], [0, B]]` or `[[0, C], [D, 0]]` acting
//! on row vectors maps `U = F^h ⊕ 0` and `U* = 0 ⊕ F^h` into `U ∪ U*`, so it
//! permutes the `2(q^h − 1)` nonzero vectors of `U` and `U*`. Those vectors
//! are numbered `U` first, each by the base-`q` number formed from the field
//! indices of its coordinates, minus one.

use alloc::vec;
use alloc::vec::Vec;

use super::group::FiniteGroup;
use super::perm::Perm;
use super::EngineError;
use crate::ff::{FieldContext, FieldElement};
use crate::linalg::GfMatrix;

enum Arith {
    Prime(u64),
    Table { q: usize, add: Vec<u32>, mul: Vec<u32> },
    Generic(FieldContext),
}

impl Arith {
    fn new(ctx: &FieldContext) -> Self {
        let q = ctx.size() as usize;
        if ctx.degree() == 1 {
            Arith::Prime(ctx.characteristic())
        } else if q <= 256 {
            let els: Vec<FieldElement> = ctx.elements().collect();
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for (i, a) in els.iter().enumerate() {
                for (j, b) in els.iter().enumerate() {
                    add[i * q + j] = ctx.index_of(&ctx.add(a, b)) as u32;
                    mul[i * q + j] = ctx.index_of(&ctx.mul(a, b)) as u32;
                }
            }
            Arith::Table { q, add, mul }
        } else {
            Arith::Generic(ctx.clone())
        }
    }

    fn mul_add(&self, acc: u32, a: u32, b: u32) -> u32 {
        match self {
            Arith::Prime(p) => ((acc as u64 + a as u64 * b as u64) % p) as u32,
            Arith::Table { q, add, mul } => add[acc as usize * q + mul[a as usize * q + b as usize] as usize],
            Arith::Generic(ctx) => {
                let (acc, a, b) = (
                    ctx.from_index(acc as u64),
                    ctx.from_index(a as u64),
                    ctx.from_index(b as u64),
                );
                ctx.index_of(&ctx.add(&acc, &ctx.mul(&a, &b))) as u32
            }
        }
    }
}

/// Images of all nonzero vectors of `F^h` under the `h × h` matrix `b`
/// (field indices, row-major), as values in `[0, q^h)`.
fn vector_images(arith: &Arith, q: u32, h: usize, count: u32, b: &[u32]) -> Vec<u32> {
    let mut v = vec![0u32; h];
    let mut w = vec![0u32; h];
    let mut out = Vec::with_capacity(count as usize);
    for value in 1..=count {
        let mut x = value;
        for c in v.iter_mut().rev() {
            *c = x % q;
            x /= q;
        }
        for (j, wj) in w.iter_mut().enumerate() {
            let mut acc = 0;
            for (i, &vi) in v.iter().enumerate() {
                if vi != 0 {
                    acc = arith.mul_add(acc, vi, b[i * h + j]);
                }
            }
            *wj = acc;
        }
        out.push(w.iter().fold(0u32, |acc, &c| acc * q + c));
    }
    out
}

fn matrix_indices(ctx: &FieldContext, m: &GfMatrix, r0: usize, c0: usize, h: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(h * h);
    for r in 0..h {
        for c in 0..h {
            out.push(ctx.index_of(m.get(r0 + r, c0 + c)) as u32);
        }
    }
    out
}

fn points_limit(q: u64, h: usize) -> Result<u32, EngineError> {
    let n = (q as u128).pow(h as u32) - 1;
    if n > (u32::MAX / 4) as u128 {
        return Err(EngineError::CapExceeded {
            what: "permutation degree",
            size: n,
            cap: (u32::MAX / 4) as u128,
        });
    }
    Ok(n as u32)
}

/// Converts invertible `n × n` matrices to permutations of the `q^n − 1`
/// nonzero row vectors, numbered as in [`BlockAction`].
pub struct VectorAction {
    ctx: FieldContext,
    n: usize,
    arith: Arith,
    count: u32,
}

impl VectorAction {
    pub fn new(ctx: &FieldContext, n: usize) -> Result<Self, EngineError> {
        Ok(Self {
            ctx: ctx.clone(),
            n,
            arith: Arith::new(ctx),
            count: points_limit(ctx.size(), n)?,
        })
    }

    pub fn degree(&self) -> usize {
        self.count as usize
    }

    pub fn perm_of(&self, m: &GfMatrix) -> Result<Perm, EngineError> {
        if m.dim() != self.n || m.ctx() != &self.ctx {
            return Err(EngineError::DegreeMismatch {
                expected: self.n,
                found: m.dim(),
            });
        }
        let b = matrix_indices(&self.ctx, m, 0, 0, self.n);
        let mut images = Vec::with_capacity(self.count as usize);
        for v in vector_images(&self.arith, self.ctx.size() as u32, self.n, self.count, &b) {
            if v == 0 {
                return Err(EngineError::Linalg(crate::linalg::LinalgError::Singular));
            }
            images.push(v - 1);
        }
        Perm::from_images(images)
    }
}

/// Converts block-shaped matrices over one field to permutations.
pub struct BlockAction {
    ctx: FieldContext,
    h: usize,
    arith: Arith,
    /// `q^h − 1`, the number of points in each half.
    half: u32,
}

impl BlockAction {
    pub fn new(ctx: &FieldContext, dim: usize) -> Result<Self, EngineError> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(EngineError::NotBlockShaped);
        }
        let h = dim / 2;
        Ok(Self {
            ctx: ctx.clone(),
            h,
            arith: Arith::new(ctx),
            half: points_limit(ctx.size(), h)?,
        })
    }

    pub fn degree(&self) -> usize {
        2 * self.half as usize
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    fn block_indices(&self, m: &GfMatrix, r0: usize, c0: usize) -> Vec<u32> {
        matrix_indices(&self.ctx, m, r0, c0, self.h)
    }

    fn half_images(&self, b: &[u32]) -> Vec<u32> {
        vector_images(&self.arith, self.ctx.size() as u32, self.h, self.half, b)
    }

    pub fn perm_of(&self, m: &GfMatrix) -> Result<Perm, EngineError> {
        if m.dim() != 2 * self.h || m.ctx() != &self.ctx || !m.is_block_shaped() {
            return Err(EngineError::NotBlockShaped);
        }
        let h = self.h;
        let anti = m.is_block_antidiagonal() && !m.is_zero();
        let (top, bottom) = if anti {
            (self.block_indices(m, 0, h), self.block_indices(m, h, 0))
        } else {
            (self.block_indices(m, 0, 0), self.block_indices(m, h, h))
        };
        let top_img = self.half_images(&top);
        let bottom_img = self.half_images(&bottom);
        let half = self.half;
        // U goes to U* when antidiagonal, and U* to U.
        let (shift_top, shift_bottom) = if anti { (half, 0) } else { (0, half) };
        let mut images = Vec::with_capacity(2 * half as usize);
        for &v in &top_img {
            if v == 0 {
                return Err(EngineError::Linalg(crate::linalg::LinalgError::Singular));
            }
            images.push(shift_top + v - 1);
        }
        for &v in &bottom_img {
            if v == 0 {
                return Err(EngineError::Linalg(crate::linalg::LinalgError::Singular));
            }
            images.push(shift_bottom + v - 1);
        }
        let p = Perm::from_images(images)?;
        if p.is_identity() && !m.is_identity() {
            return Err(EngineError::UnfaithfulAction);
        }
        Ok(p)
    }

    /// The point of a nonzero vector in `U` (`upper = true`) or `U*`.
    pub fn point_of(&self, coords: &[FieldElement], upper: bool) -> u32 {
        let q = self.ctx.size() as u32;
        let value = coords
            .iter()
            .fold(0u32, |acc, c| acc * q + self.ctx.index_of(c) as u32);
        if upper {
            value - 1
        } else {
            self.half + value - 1
        }
    }
}

/// The permutation group of degree `2(q^h − 1)` induced by `gens`, with the
/// generator permutations in the same order.
pub fn matgroup_to_permgroup(gens: &[GfMatrix], known_order: Option<u128>) -> Result<FiniteGroup, EngineError> {
    let first = gens.first().ok_or(EngineError::NotBlockShaped)?;
    let act = BlockAction::new(first.ctx(), first.dim())?;
    let perms = gens
        .iter()
        .map(|m| act.perm_of(m))
        .collect::<Result<Vec<_>, _>>()?;
    match known_order {
        Some(n) => FiniteGroup::with_known_order(act.degree(), perms, n),
        None => FiniteGroup::new(act.degree(), perms),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_map_to_products() {
        let ctx = FieldContext::new(3, 1).unwrap();
        let a = GfMatrix::from_ints(&ctx, &[1, 1, 0, 0, 1, 0, 0, 0, 1]);
        let b = GfMatrix::from_ints(&ctx, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        let x = GfMatrix::block_diag(&a, &a.transpose().inverse().unwrap());
        let y = GfMatrix::block_antidiag(&b, &b);
        let act = BlockAction::new(&ctx, 6).unwrap();
        assert_eq!(act.degree(), 52);
        let px = act.perm_of(&x).unwrap();
        let py = act.perm_of(&y).unwrap();
        assert_eq!(act.perm_of(&x.mul(&y)).unwrap(), px.then(&py));
        assert_eq!(act.perm_of(&y.mul(&x)).unwrap(), py.then(&px));
        assert_eq!(px.order(), x.order(100).unwrap());
        assert!(act.perm_of(&GfMatrix::identity(&ctx, 6)).unwrap().is_identity());
    }

    #[test]
    fn vector_action_is_a_homomorphism() {
        let ctx = FieldContext::new(2, 2).unwrap();
        let w = ctx.element_of_order(3).unwrap();
        let a = GfMatrix::from_entries(
            &ctx,
            vec![ctx.one(), w.clone(), ctx.zero(), ctx.zero(), ctx.one(), ctx.zero(), ctx.zero(), ctx.zero(), ctx.one()],
        );
        let b = GfMatrix::from_ints(&ctx, &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
        let act = VectorAction::new(&ctx, 3).unwrap();
        assert_eq!(act.degree(), 63);
        let (pa, pb) = (act.perm_of(&a).unwrap(), act.perm_of(&b).unwrap());
        assert_eq!(act.perm_of(&a.mul(&b)).unwrap(), pa.then(&pb));
        assert_eq!(pa.order(), 2);
        assert_eq!(pb.order(), 3);
        assert_eq!(FiniteGroup::new(63, vec![pa, pb]).unwrap().order() % 3, 0);
        let scalar = GfMatrix::diag(&ctx, &[w.clone(), w.clone(), w]);
        assert_eq!(act.perm_of(&scalar).unwrap().order(), 3);
    }

    #[test]
    fn rejects_mixed_blocks() {
        let ctx = FieldContext::new(5, 1).unwrap();
        let mut m = GfMatrix::identity(&ctx, 6);
        m.set(0, 4, ctx.one());
        let act = BlockAction::new(&ctx, 6).unwrap();
        assert_eq!(act.perm_of(&m), Err(EngineError::NotBlockShaped));
    }

    #[test]
    fn nonprime_field_tables() {
        let ctx = FieldContext::new(2, 2).unwrap();
        let w = ctx.element_of_order(3).unwrap();
        let one = ctx.one();
        let z = ctx.zero();
        let a = GfMatrix::diag(&ctx, &[w.clone(), one.clone(), ctx.inv(&w).unwrap()]);
        let b = GfMatrix::from_rows(&ctx, &[&[one.clone(), w.clone(), z.clone()], &[z.clone(), one.clone(), z.clone()], &[z.clone(), z.clone(), one.clone()]]);
        let act = BlockAction::new(&ctx, 6).unwrap();
        let x = GfMatrix::block_diag(&a, &b);
        let y = GfMatrix::block_antidiag(&b, &a);
        assert_eq!(act.perm_of(&x.mul(&y)).unwrap(), act.perm_of(&x).unwrap().then(&act.perm_of(&y).unwrap()));
    }
}
