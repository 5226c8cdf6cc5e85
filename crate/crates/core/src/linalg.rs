//! Dense square matrices over a [`FieldContext`].
//!
//! Vectors are rows and matrices act on the right, `v -> v·M`, so the
//! permutation induced by `A·B` is "first `A`, then `B`".

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::ff::{lcm, FieldContext, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero eigenvalue")]
    ZeroEigenvalue,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    ctx: FieldContext,
    n: usize,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix over GF({}^{}) [", self.ctx.characteristic(), self.ctx.degree())?;
        for r in 0..self.n {
            writeln!(f, "  {:?}", &self.entries[r * self.n..(r + 1) * self.n])?;
        }
        write!(f, "]")
    }
}

impl GfMatrix {
    pub fn zero(ctx: &FieldContext, n: usize) -> Self {
        Self {
            ctx: ctx.clone(),
            n,
            entries: vec![ctx.zero(); n * n],
        }
    }

    pub fn identity(ctx: &FieldContext, n: usize) -> Self {
        let mut m = Self::zero(ctx, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// Row-major construction; panics unless `entries.len()` is a square.
    pub fn from_entries(ctx: &FieldContext, entries: Vec<FieldElement>) -> Self {
        let n = (0..=entries.len()).find(|n| n * n >= entries.len()).unwrap();
        assert_eq!(n * n, entries.len(), "entry count must be a perfect square");
        Self {
            ctx: ctx.clone(),
            n,
            entries,
        }
    }

    pub fn from_rows(ctx: &FieldContext, rows: &[&[FieldElement]]) -> Self {
        let entries = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Self::from_entries(ctx, entries)
    }

    /// Row-major integers reduced into the prime subfield.
    pub fn from_ints(ctx: &FieldContext, ints: &[i64]) -> Self {
        Self::from_entries(ctx, ints.iter().map(|&i| ctx.from_int(i)).collect())
    }

    pub fn diag(ctx: &FieldContext, d: &[FieldElement]) -> Self {
        let mut m = Self::zero(ctx, d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// `[[a, 0], [0, b]]` for square blocks of equal size.
    pub fn block_diag(a: &GfMatrix, b: &GfMatrix) -> Self {
        assert_eq!(a.n, b.n);
        let h = a.n;
        let mut m = Self::zero(&a.ctx, 2 * h);
        m.put_block(0, 0, a);
        m.put_block(h, h, b);
        m
    }

    /// `[[0, upper], [lower, 0]]`, the layout used for elements outside the
    /// block-diagonal subgroup.
    pub fn block_antidiag(upper: &GfMatrix, lower: &GfMatrix) -> Self {
        assert_eq!(upper.n, lower.n);
        let h = upper.n;
        let mut m = Self::zero(&upper.ctx, 2 * h);
        m.put_block(0, h, upper);
        m.put_block(h, 0, lower);
        m
    }

    fn put_block(&mut self, r0: usize, c0: usize, b: &GfMatrix) {
        for r in 0..b.n {
            for c in 0..b.n {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    /// The `size × size` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> GfMatrix {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(self.get(r0 + r, c0 + c).clone());
            }
        }
        GfMatrix {
            ctx: self.ctx.clone(),
            n: size,
            entries,
        }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.n + c] = v;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ctx, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let f = &self.ctx;
        let n = self.n;
        let mut out = Self::zero(f, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = f.zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(a, other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &GfMatrix) -> GfMatrix {
        let f = &self.ctx;
        GfMatrix {
            ctx: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &GfMatrix) -> GfMatrix {
        let f = &self.ctx;
        GfMatrix {
            ctx: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> GfMatrix {
        let f = &self.ctx;
        GfMatrix {
            ctx: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = Self::zero(&self.ctx, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> GfMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ctx, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, other: &GfMatrix) -> Result<GfMatrix, LinalgError> {
        Ok(self.inverse()?.mul(&other.inverse()?).mul(self).mul(other))
    }

    pub fn commutes_with(&self, other: &GfMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Smallest `m ≥ 1` with `self^m = I`, by repeated multiplication up to
    /// `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let id = Self::identity(&self.ctx, self.n);
        let mut acc = self.clone();
        for m in 1..=limit {
            if acc == id {
                return Some(m);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.ctx;
        (0..self.n)
            .map(|j| {
                v.iter().enumerate().fold(f.zero(), |acc, (i, x)| {
                    if x.is_zero() {
                        acc
                    } else {
                        f.add(&acc, &f.mul(x, self.get(i, j)))
                    }
                })
            })
            .collect()
    }

    /// Row-reduces a copy; returns `(rank, determinant)`.
    fn eliminate(&self) -> (usize, FieldElement) {
        let f = &self.ctx;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = f.one();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
                det = f.zero();
                continue;
            };
            if piv != rank {
                for c in 0..n {
                    a.swap(piv * n + c, rank * n + c);
                }
                det = f.neg(&det);
            }
            let pv = a[rank * n + col].clone();
            det = f.mul(&det, &pv);
            let pinv = f.inv(&pv).expect("pivot is nonzero");
            for r in 0..n {
                if r == rank || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = f.mul(&a[r * n + col], &pinv);
                for c in col..n {
                    let t = f.mul(&factor, &a[rank * n + c]);
                    a[r * n + c] = f.sub(&a[r * n + c], &t);
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> FieldElement {
        self.eliminate().1
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<GfMatrix, LinalgError> {
        let f = &self.ctx;
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![f.zero(); n * w];
        for r in 0..n {
            for c in 0..n {
                a[r * w + c] = self.get(r, c).clone();
            }
            a[r * w + n + r] = f.one();
        }
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r * w + col].is_zero())
                .ok_or(LinalgError::Singular)?;
            if piv != col {
                for c in 0..w {
                    a.swap(piv * w + c, col * w + c);
                }
            }
            let pinv = f.inv(&a[col * w + col])?;
            for c in 0..w {
                a[col * w + c] = f.mul(&a[col * w + c], &pinv);
            }
            for r in 0..n {
                if r == col || a[r * w + col].is_zero() {
                    continue;
                }
                let factor = a[r * w + col].clone();
                for c in 0..w {
                    let t = f.mul(&factor, &a[col * w + c]);
                    a[r * w + c] = f.sub(&a[r * w + c], &t);
                }
            }
        }
        let mut out = Self::zero(f, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, a[r * w + n + c].clone());
            }
        }
        Ok(out)
    }

    /// Dimension of the fixed space, `dim ker(M - I)`.
    pub fn fixed_space_dim(&self) -> usize {
        self.n - self.sub(&Self::identity(&self.ctx, self.n)).rank()
    }

    /// True when the matrix is `[[A, 0], [0, B]]` or `[[0, A], [B, 0]]` for
    /// the even split of its dimension.
    pub fn is_block_shaped(&self) -> bool {
        if !self.n.is_multiple_of(2) {
            return false;
        }
        let h = self.n / 2;
        let off = self.block(0, h, h).is_zero() && self.block(h, 0, h).is_zero();
        let on = self.block(0, 0, h).is_zero() && self.block(h, h, h).is_zero();
        off || on
    }

    pub fn is_block_antidiagonal(&self) -> bool {
        let h = self.n / 2;
        self.n.is_multiple_of(2) && self.block(0, 0, h).is_zero() && self.block(h, h, h).is_zero()
    }
}

/// An eigenvalue in GF(q²) together with its multiplicative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenOrder {
    pub eigenvalue: FieldElement,
    pub order: u64,
}

/// Roots of the characteristic polynomial of a 2×2 matrix, computed in the
/// quadratic extension, with their multiplicative orders. The first entry is
/// the smaller root.
pub fn quadratic_eigen_orders(y: &GfMatrix) -> Result<[EigenOrder; 2], LinalgError> {
    if y.dim() != 2 {
        return Err(LinalgError::DimensionMismatch(y.dim(), 2));
    }
    let f = y.ctx();
    if y.det().is_zero() {
        return Err(LinalgError::ZeroEigenvalue);
    }
    let ext = FieldContext::new(f.characteristic(), 2 * f.degree())?;
    let emb = f.embedding_into(&ext)?;
    let tr = emb.map(&f.add(y.get(0, 0), y.get(1, 1)));
    let det = emb.map(&y.det());
    // x² - tr·x + det
    let mut roots: Vec<FieldElement> = if ext.characteristic() == 2 {
        ext.elements()
            .filter(|x| {
                let v = ext.add(&ext.sub(&ext.mul(x, x), &ext.mul(&tr, x)), &det);
                v.is_zero()
            })
            .collect()
    } else {
        let four = ext.from_int(4);
        let disc = ext.sub(&ext.mul(&tr, &tr), &ext.mul(&four, &det));
        let s = ext.sqrt(&disc).expect("every element of GF(q) is a square in GF(q²)");
        let half = ext.inv(&ext.from_int(2))?;
        vec![
            ext.mul(&ext.add(&tr, &s), &half),
            ext.mul(&ext.sub(&tr, &s), &half),
        ]
    };
    if roots.len() == 1 {
        roots.push(roots[0].clone());
    }
    roots.sort();
    let mk = |e: &FieldElement| -> Result<EigenOrder, LinalgError> {
        Ok(EigenOrder {
            order: ext.order(e)?,
            eigenvalue: e.clone(),
        })
    };
    Ok([mk(&roots[0])?, mk(&roots[1])?])
}

/// `lcm` of the two eigenvalue orders; equals the matrix order when the
/// eigenvalues are distinct.
pub fn eigen_order_lcm(e: &[EigenOrder; 2]) -> u64 {
    lcm(e[0].order, e[1].order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldContext {
        FieldContext::new(p, 1).unwrap()
    }

    #[test]
    fn inverse_of_identity_and_diagonal() {
        let f = gf(7);
        let id = GfMatrix::identity(&f, 4);
        assert_eq!(id.inverse().unwrap(), id);
        let d = GfMatrix::diag(&f, &[f.from_int(3), f.from_int(5), f.from_int(2)]);
        let e = GfMatrix::diag(&f, &[f.from_int(5), f.from_int(3), f.from_int(4)]);
        assert_eq!(d.inverse().unwrap(), e);
        let sing = GfMatrix::from_ints(&f, &[1, 2, 2, 4]);
        assert_eq!(sing.inverse(), Err(LinalgError::Singular));
        assert!(sing.det().is_zero());
    }

    #[test]
    fn fixed_spaces() {
        let f = gf(7);
        assert_eq!(GfMatrix::identity(&f, 6).fixed_space_dim(), 6);
        let t2 = GfMatrix::from_entries(
            &f,
            GfMatrix::diag(
                &f,
                &[-1, 1, -1, -1, 1, -1].map(|x| f.from_int(x)),
            )
            .entries()
            .to_vec(),
        );
        assert_eq!(t2.fixed_space_dim(), 2);
        let i3 = GfMatrix::identity(&f, 3);
        let t = GfMatrix::block_antidiag(&i3, &i3);
        assert_eq!(t.fixed_space_dim(), 3);
        assert!(t.is_block_shaped());
        assert!(t.is_block_antidiagonal());
    }

    #[test]
    fn eigen_orders_identity() {
        let f = gf(7);
        let e = quadratic_eigen_orders(&GfMatrix::identity(&f, 2)).unwrap();
        assert_eq!(e[0].order, 1);
        assert_eq!(e[1].order, 1);
        let z = GfMatrix::zero(&f, 2);
        assert_eq!(quadratic_eigen_orders(&z), Err(LinalgError::ZeroEigenvalue));
    }

    #[test]
    fn eigen_orders_match_matrix_order() {
        let f = gf(7);
        // Y = [[-α, -β], [β, -α]] with α = 1/3 = 5, α² + β² = 1 → β² = 1 - 4 = 4
        let alpha = f.from_int(5);
        let beta = f.sqrt(&f.from_int(4)).unwrap();
        let y = GfMatrix::from_rows(
            &f,
            &[&[f.neg(&alpha), f.neg(&beta)], &[beta.clone(), f.neg(&alpha)]],
        );
        let e = quadratic_eigen_orders(&y).unwrap();
        assert!(e.iter().any(|x| x.order == 8));
        let ext = FieldContext::new(7, 2).unwrap();
        assert_eq!(ext.mul(&e[0].eigenvalue, &e[1].eigenvalue), ext.one());
        assert_eq!(eigen_order_lcm(&e), y.order(100).unwrap());
    }
}
