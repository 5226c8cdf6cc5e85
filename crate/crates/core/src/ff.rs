//! Exact arithmetic in GF(p^k).
//!
//! Elements are coefficient vectors of residue polynomials modulo a monic
//! irreducible polynomial over GF(p). The derived ordering on
//! [`FieldElement`] compares coefficient vectors lexicographically, and the
//! integer encoding returned by [`FieldContext::index_of`] is monotone in that
//! ordering, so "smallest" always means the same thing.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field of order {p}^{k} exceeds native width")]
    Overflow { p: u64, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of multiplicative order {0}")]
    NoSuchOrder(u64),
    #[error("degree {small} does not divide {big}")]
    NotASubfield { small: u32, big: u32 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `(p, k)` when `q = p^k` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An element of GF(p^k); `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

/// GF(p^k) together with its defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: u32,
    k: u32,
    /// Monic, low-degree coefficient first, length `k + 1`.
    modulus: Vec<u32>,
    size: u64,
}

impl FieldContext {
    /// Builds GF(p^k). For `k > 1` the modulus is the smallest monic
    /// irreducible polynomial, ordering candidates by their coefficient vectors
    /// read from the `x^{k-1}` term down.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if k == 0 {
            return Err(FieldError::Overflow { p, k });
        }
        let size = (0..k)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&s| s <= u32::MAX as u64)
            .ok_or(FieldError::Overflow { p, k })?;
        let p32 = p as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p32, k as usize)
        };
        Ok(Self {
            p: p32,
            k,
            modulus,
            size,
        })
    }

    /// GF(q) for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NonPrime(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements, `p^k`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Element with the given index; see [`FieldContext::index_of`].
    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        debug_assert!(idx < self.size);
        let mut e = self.zero();
        for c in e.coeffs.iter_mut().rev() {
            *c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        e
    }

    /// Integer encoding in `[0, p^k)`, monotone in the lexicographic order of
    /// coefficient vectors. For prime fields this is the residue itself.
    pub fn index_of(&self, e: &FieldElement) -> u64 {
        e.coeffs
            .iter()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| ((x as u64 + y as u64) % p as u64) as u32)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| if x == 0 { 0 } else { p - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p as u64;
        let k = self.k as usize;
        if k == 1 {
            return FieldElement {
                coeffs: vec![((a.coeffs[0] as u64 * b.coeffs[0] as u64) % p) as u32],
            };
        }
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u64;
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
        }
        FieldElement {
            coeffs: prod[..k].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.size - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Multiplicative order, found by stripping prime factors from `p^k - 1`.
    pub fn order(&self, a: &FieldElement) -> Result<u64, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.size - 1;
        let mut ord = group;
        for f in prime_factors(group) {
            while ord.is_multiple_of(f) && self.pow(a, ord / f) == self.one() {
                ord /= f;
            }
        }
        Ok(ord)
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, (self.size - 1) / 2) == self.one()
    }

    /// Canonical square root: of the two roots, the one with the smaller
    /// coefficient vector. Tonelli–Shanks over GF(p^k).
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if self.p == 2 {
            // Frobenius is bijective: sqrt(a) = a^(q/2)
            return Some(self.pow(a, self.size / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        let one = self.one();
        let mut m = self.size - 1;
        let mut s = 0u32;
        while m.is_multiple_of(2) {
            m /= 2;
            s += 1;
        }
        let z = self
            .elements()
            .skip(1)
            .find(|z| !self.is_square(z))
            .expect("odd-order field has a non-square");
        let mut big_m = s;
        let mut c = self.pow(&z, m);
        let mut t = self.pow(a, m);
        let mut r = self.pow(a, m.div_ceil(2));
        while t != one {
            let mut i = 0;
            let mut tt = t.clone();
            while tt != one {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(big_m - i - 1) {
                b = self.mul(&b, &b);
            }
            big_m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        let other = self.neg(&r);
        Some(if other < r { other } else { r })
    }

    /// Smallest element of exact multiplicative order `n`.
    pub fn element_of_order(&self, n: u64) -> Result<FieldElement, FieldError> {
        if n == 0 || !(self.size - 1).is_multiple_of(n) {
            return Err(FieldError::NoSuchOrder(n));
        }
        self.elements()
            .skip(1)
            .find(|x| self.order(x) == Ok(n))
            .ok_or(FieldError::NoSuchOrder(n))
    }

    /// Embedding of `self` into a field of the same characteristic whose
    /// degree is a multiple of `self.degree()`. The generator `x` is sent to
    /// the smallest root of the modulus in `big`.
    pub fn embedding_into(&self, big: &FieldContext) -> Result<Embedding, FieldError> {
        if big.p != self.p || !big.k.is_multiple_of(self.k) {
            return Err(FieldError::NotASubfield {
                small: self.k,
                big: big.k,
            });
        }
        let root = if self.k == 1 {
            big.zero()
        } else {
            big.elements()
                .find(|x| {
                    let mut acc = big.zero();
                    for c in self.modulus.iter().rev() {
                        acc = big.add(&big.mul(&acc, x), &big.from_int(*c as i64));
                    }
                    acc.is_zero()
                })
                .ok_or(FieldError::NotASubfield {
                    small: self.k,
                    big: big.k,
                })?
        };
        let mut powers = Vec::with_capacity(self.k as usize);
        let mut acc = big.one();
        for _ in 0..self.k {
            powers.push(acc.clone());
            acc = big.mul(&acc, &root);
        }
        Ok(Embedding {
            target: big.clone(),
            powers,
        })
    }
}

/// Field homomorphism GF(p^k) -> GF(p^K).
#[derive(Clone, Debug)]
pub struct Embedding {
    target: FieldContext,
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn map(&self, e: &FieldElement) -> FieldElement {
        let big = &self.target;
        e.coeffs
            .iter()
            .zip(&self.powers)
            .fold(big.zero(), |acc, (&c, pw)| {
                big.add(&acc, &big.mul(&big.from_int(c as i64), pw))
            })
    }

    pub fn target(&self) -> &FieldContext {
        &self.target
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // `m` is monic
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p64 - lead) * mc as u64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn monic_from_index(mut idx: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut poly = vec![0u32; deg + 1];
    for c in poly.iter_mut().take(deg) {
        *c = (idx % p as u64) as u32;
        idx /= p as u64;
    }
    poly[deg] = 1;
    poly
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as u64).pow(k as u32);
    (0..count)
        .map(|idx| monic_from_index(idx, k, p))
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}
